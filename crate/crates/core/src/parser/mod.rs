pub mod definition;
pub mod expr;

pub use definition::{load_definition, ManifoldDefinition, ParsedFields};
pub use expr::{parse_expression, parse_field, Expr};
