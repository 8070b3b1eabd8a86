use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::polynomial::render_rational;
use super::Rational;
use crate::error::{Error, Result};

/// `E = exp(rate * x_coord)`, treated as an independent transcendental.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub coord: usize,
    pub rate: Rational,
}

/// Coordinate names plus exponential generators. Generators occupy variable
/// indices `dim()..dim() + generators.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    coords: Vec<String>,
    generators: Vec<Generator>,
}

pub type Ctx = Arc<Context>;

impl Context {
    pub fn new(coords: Vec<String>, generators: Vec<Generator>) -> Result<Ctx> {
        let mut seen = std::collections::BTreeSet::new();
        for name in coords.iter().chain(generators.iter().map(|g| &g.name)) {
            if !seen.insert(name.clone()) {
                return Err(Error::Definition(format!("duplicate identifier `{name}`")));
            }
        }
        for g in &generators {
            if g.coord >= coords.len() {
                return Err(Error::Definition(format!(
                    "generator `{}` refers to coordinate index {}",
                    g.name, g.coord
                )));
            }
            if num_traits::Zero::is_zero(&g.rate) {
                return Err(Error::Definition(format!("generator `{}` has rate 0", g.name)));
            }
        }
        Ok(Arc::new(Context { coords, generators }))
    }

    pub fn coordinates(names: &[&str]) -> Ctx {
        Self::new(names.iter().map(|s| s.to_string()).collect(), Vec::new())
            .expect("distinct coordinate names")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.coords.len() + self.generators.len()
    }

    /// Display names for every variable index.
    pub fn names(&self) -> Vec<String> {
        self.coords
            .iter()
            .cloned()
            .chain(self.generators.iter().map(|g| g.name.clone()))
            .collect()
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| n == name)
    }

    pub fn generator_var(&self, k: usize) -> usize {
        self.coords.len() + k
    }

    /// Appends a generator, returning the extended context. Existing variable
    /// indices are unchanged, so fields lift by re-tagging.
    pub fn with_generator(&self, g: Generator) -> Result<Ctx> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Context::new(self.coords.clone(), gens)
    }

    /// True when `self` is `other` possibly extended by further generators.
    pub fn extends(&self, other: &Context) -> bool {
        self.coords == other.coords
            && self.generators.len() >= other.generators.len()
            && self.generators[..other.generators.len()] == other.generators[..]
    }

    pub fn same(a: &Ctx, b: &Ctx) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }

    pub fn check_same(a: &Ctx, b: &Ctx) -> Result<()> {
        if Self::same(a, b) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: a.to_string(),
                right: b.to_string(),
            })
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coords [{}]", self.coords.join(", "))?;
        if !self.generators.is_empty() {
            let gens: Vec<String> = self
                .generators
                .iter()
                .map(|g| {
                    format!(
                        "{} = exp({}*{})",
                        g.name,
                        render_rational(&g.rate),
                        self.coords[g.coord]
                    )
                })
                .collect();
            write!(f, " generators [{}]", gens.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct GeneratorView<'a> {
    name: &'a str,
    coord: &'a str,
    rate: String,
}

impl Serialize for Context {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let gens: Vec<GeneratorView> = self
            .generators
            .iter()
            .map(|g| GeneratorView {
                name: &g.name,
                coord: &self.coords[g.coord],
                rate: render_rational(&g.rate),
            })
            .collect();
        let mut st = s.serialize_struct("Context", 2)?;
        st.serialize_field("coords", &self.coords)?;
        st.serialize_field("generators", &gens)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::int;

    fn gen(name: &str, coord: usize, rate: i64) -> Generator {
        Generator {
            name: name.into(),
            coord,
            rate: int(rate),
        }
    }

    #[test]
    fn generators_follow_coordinates() {
        let ctx = Context::new(vec!["x".into(), "t".into()], vec![gen("E", 1, 2)]).unwrap();
        assert_eq!(ctx.dim(), 2);
        assert_eq!(ctx.nvars(), 3);
        assert_eq!(ctx.lookup("E"), Some(2));
        assert_eq!(ctx.generator_var(0), 2);
    }

    #[test]
    fn rejects_bad_generators() {
        let coords = || vec!["x".to_string()];
        assert!(Context::new(coords(), vec![gen("x", 0, 1)]).is_err());
        assert!(Context::new(coords(), vec![gen("E", 3, 1)]).is_err());
        assert!(Context::new(coords(), vec![gen("E", 0, 0)]).is_err());
    }

    #[test]
    fn extension_keeps_the_prefix() {
        let a = Context::coordinates(&["x", "y"]);
        let b = a.with_generator(gen("E", 0, 1)).unwrap();
        assert!(b.extends(&a));
        assert!(!Context::same(&a, &b));
    }
}
