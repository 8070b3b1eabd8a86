//! Manifold definition files.
//!
//! ```toml
//! name = "example"            # optional
//!
//! [chart]
//! dim = 3
//! coords = ["x", "y", "z"]
//! base_point = ["1", "1", "0"]
//!
//! [generators]               # optional
//! E = { coord = "t", rate = "2" }
//!
//! [structure]
//! xi = ["x", "y + 2*x", "1"]
//! eta = ["0", "0", "1"]
//! phi = [["0", "1", "-(y + 2*x)"], ["1", "0", "-x"], ["0", "0", "0"]]
//! metric = [[...], [...], [...]]
//! alpha = "1"                # optional, cross-checked
//! ```
//!
//! Expressions may be given as strings or as plain numbers.

use toml::{Table, Value};

use super::expr::parse_field;
use crate::error::{Error, Result};
use crate::symbolic::{parse_rational, render_rational, Context, Ctx, Generator, Rational, ScalarField};

#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldDefinition {
    pub name: Option<String>,
    pub dim: usize,
    pub coords: Vec<String>,
    pub base_point: Vec<Rational>,
    pub generators: Vec<Generator>,
    pub xi: Vec<String>,
    pub eta: Vec<String>,
    pub phi: Vec<Vec<String>>,
    pub metric: Vec<Vec<String>>,
    pub alpha: Option<String>,
}

/// Definition with every expression lowered to a canonical field.
#[derive(Clone, Debug)]
pub struct ParsedFields {
    pub ctx: Ctx,
    pub xi: Vec<ScalarField>,
    pub eta: Vec<ScalarField>,
    pub phi: Vec<Vec<ScalarField>>,
    pub metric: Vec<Vec<ScalarField>>,
    pub alpha: Option<ScalarField>,
}

fn expr_string(v: &Value, key: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Integer(i) => Ok(i.to_string()),
        Value::Float(f) if f.is_finite() => Ok(f.to_string()),
        other => Err(Error::Definition(format!(
            "`{key}` must hold expressions, found {}",
            other.type_str()
        ))),
    }
}

fn rational_value(v: &Value, key: &str) -> Result<Rational> {
    let s = expr_string(v, key)?;
    parse_rational(&s).ok_or_else(|| Error::Definition(format!("`{key}`: `{s}` is not a rational number")))
}

fn table<'a>(root: &'a Table, key: &str) -> Result<&'a Table> {
    match root.get(key) {
        Some(Value::Table(t)) => Ok(t),
        Some(_) => Err(Error::Definition(format!("`{key}` must be a section"))),
        None => Err(Error::MissingKey(key.to_string())),
    }
}

fn get<'a>(t: &'a Table, section: &str, key: &str) -> Result<&'a Value> {
    t.get(key).ok_or_else(|| Error::MissingKey(format!("{section}.{key}")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Definition(format!("`{key}` must be an array")))
}

fn vector(v: &Value, key: &str, dim: usize) -> Result<Vec<String>> {
    let a = array(v, key)?;
    if a.len() != dim {
        return Err(Error::Shape(format!("`{key}` has {} entries, dim is {dim}", a.len())));
    }
    a.iter().map(|x| expr_string(x, key)).collect()
}

fn matrix(v: &Value, key: &str, dim: usize) -> Result<Vec<Vec<String>>> {
    let rows = array(v, key)?;
    if rows.len() != dim {
        return Err(Error::Shape(format!("`{key}` has {} rows, dim is {dim}", rows.len())));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| vector(r, &format!("{key}[{i}]"), dim))
        .collect()
}

pub fn load_definition(contents: &str) -> Result<ManifoldDefinition> {
    let root: Table = contents.parse().map_err(|e: toml::de::Error| Error::Syntax {
        offset: e.span().map(|s| s.start).unwrap_or(0),
        message: e.message().to_string(),
    })?;
    let name = match root.get("name") {
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(Error::Definition("`name` must be a string".into())),
        None => None,
    };

    let chart = table(&root, "chart")?;
    let dim = get(chart, "chart", "dim")?
        .as_integer()
        .ok_or_else(|| Error::Definition("`chart.dim` must be an integer".into()))?;
    if dim < 3 || dim % 2 == 0 {
        return Err(Error::Definition(format!("dimension must be odd and at least 3, got {dim}")));
    }
    let dim = dim as usize;
    let coords: Vec<String> = array(get(chart, "chart", "coords")?, "chart.coords")?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Definition("coordinate names must be strings".into()))
        })
        .collect::<Result<_>>()?;
    if coords.len() != dim {
        return Err(Error::Shape(format!(
            "`chart.coords` has {} names, dim is {dim}",
            coords.len()
        )));
    }
    let base_point = array(get(chart, "chart", "base_point")?, "chart.base_point")?
        .iter()
        .map(|v| rational_value(v, "chart.base_point"))
        .collect::<Result<Vec<_>>>()?;
    if base_point.len() != dim {
        return Err(Error::Shape(format!(
            "`chart.base_point` has {} entries, dim is {dim}",
            base_point.len()
        )));
    }

    let mut generators = Vec::new();
    if let Some(v) = root.get("generators") {
        let gens = v
            .as_table()
            .ok_or_else(|| Error::Definition("`generators` must be a section".into()))?;
        for (gname, spec) in gens {
            let spec = spec
                .as_table()
                .ok_or_else(|| Error::Definition(format!("generator `{gname}` must be a table")))?;
            let section = format!("generators.{gname}");
            let coord_name = get(spec, &section, "coord")?
                .as_str()
                .ok_or_else(|| Error::Definition(format!("`{section}.coord` must be a string")))?;
            let coord = coords
                .iter()
                .position(|c| c == coord_name)
                .ok_or_else(|| Error::Definition(format!("`{section}.coord`: unknown coordinate `{coord_name}`")))?;
            let rate = rational_value(get(spec, &section, "rate")?, &format!("{section}.rate"))?;
            generators.push(Generator {
                name: gname.clone(),
                coord,
                rate,
            });
        }
    }

    let st = table(&root, "structure")?;
    let def = ManifoldDefinition {
        name,
        dim,
        coords,
        base_point,
        generators,
        xi: vector(get(st, "structure", "xi")?, "structure.xi", dim)?,
        eta: vector(get(st, "structure", "eta")?, "structure.eta", dim)?,
        phi: matrix(get(st, "structure", "phi")?, "structure.phi", dim)?,
        metric: matrix(get(st, "structure", "metric")?, "structure.metric", dim)?,
        alpha: st.get("alpha").map(|v| expr_string(v, "structure.alpha")).transpose()?,
    };
    def.fields()?;
    Ok(def)
}

impl ManifoldDefinition {
    pub fn context(&self) -> Result<Ctx> {
        Context::new(self.coords.clone(), self.generators.clone())
    }

    /// Parses every expression and checks metric symmetry.
    pub fn fields(&self) -> Result<ParsedFields> {
        let ctx = self.context()?;
        let vec = |v: &[String]| v.iter().map(|s| parse_field(s, &ctx)).collect::<Result<Vec<_>>>();
        let mat = |m: &[Vec<String>]| m.iter().map(|r| vec(r)).collect::<Result<Vec<_>>>();
        let metric = mat(&self.metric)?;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if metric[i][j] != metric[j][i] {
                    return Err(Error::Asymmetric { i, j });
                }
            }
        }
        Ok(ParsedFields {
            xi: vec(&self.xi)?,
            eta: vec(&self.eta)?,
            phi: mat(&self.phi)?,
            metric,
            alpha: self.alpha.as_ref().map(|a| parse_field(a, &ctx)).transpose()?,
            ctx,
        })
    }

    /// Renders the definition back to the file format.
    pub fn to_toml(&self) -> String {
        let q = |s: &str| format!("\"{s}\"");
        let list = |v: &[String]| format!("[{}]", v.iter().map(|s| q(s)).collect::<Vec<_>>().join(", "));
        let mat = |m: &[Vec<String>]| {
            let rows: Vec<String> = m.iter().map(|r| format!("  {},", list(r))).collect();
            format!("[\n{}\n]", rows.join("\n"))
        };
        let mut out = String::new();
        if let Some(n) = &self.name {
            out.push_str(&format!("name = {}\n\n", q(n)));
        }
        out.push_str("[chart]\n");
        out.push_str(&format!("dim = {}\n", self.dim));
        out.push_str(&format!("coords = {}\n", list(&self.coords)));
        let bp: Vec<String> = self.base_point.iter().map(render_rational).collect();
        out.push_str(&format!("base_point = {}\n", list(&bp)));
        if !self.generators.is_empty() {
            out.push_str("\n[generators]\n");
            for g in &self.generators {
                out.push_str(&format!(
                    "{} = {{ coord = {}, rate = {} }}\n",
                    g.name,
                    q(&self.coords[g.coord]),
                    q(&render_rational(&g.rate))
                ));
            }
        }
        out.push_str("\n[structure]\n");
        out.push_str(&format!("xi = {}\n", list(&self.xi)));
        out.push_str(&format!("eta = {}\n", list(&self.eta)));
        out.push_str(&format!("phi = {}\n", mat(&self.phi)));
        out.push_str(&format!("metric = {}\n", mat(&self.metric)));
        if let Some(a) = &self.alpha {
            out.push_str(&format!("alpha = {}\n", q(a)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::int;

    pub(crate) const EXAMPLE: &str = r#"
name = "example_e"

[chart]
dim = 3
coords = ["x", "y", "z"]
base_point = [1, 1, 0]

[structure]
xi = ["x", "y + 2*x", 1]
eta = [0, 0, 1]
phi = [
  ["0", "1", "-(y + 2*x)"],
  ["1", "0", "-x"],
  ["0", "0", "0"],
]
metric = [
  ["1", "0", "-x"],
  ["0", "-1", "y + 2*x"],
  ["-x", "y + 2*x", "1 - 3*x^2 - 4*x*y - y^2"],
]
alpha = "1"
"#;

    #[test]
    fn loads_example() {
        let d = load_definition(EXAMPLE).unwrap();
        assert_eq!(d.dim, 3);
        assert_eq!(d.coords, vec!["x", "y", "z"]);
        assert_eq!(d.base_point, vec![int(1), int(1), int(0)]);
        let f = d.fields().unwrap();
        assert_eq!(f.metric[2][2].render(), "-3*x^2 - 4*x*y - y^2 + 1");
        let again = load_definition(&d.to_toml()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn missing_metric() {
        let text: String = EXAMPLE
            .lines()
            .take_while(|l| !l.starts_with("metric"))
            .collect::<Vec<_>>()
            .join("\n");
        assert_eq!(
            load_definition(&text),
            Err(Error::MissingKey("structure.metric".into()))
        );
    }

    #[test]
    fn asymmetric_metric() {
        let text = EXAMPLE.replace(r#"["1", "0", "-x"],
  ["0", "-1""#, r#"["1", "1", "-x"],
  ["0", "-1""#);
        assert_eq!(load_definition(&text), Err(Error::Asymmetric { i: 0, j: 1 }));
    }

    #[test]
    fn shape_and_dimension_errors() {
        let text = EXAMPLE.replace("eta = [0, 0, 1]", "eta = [0, 1]");
        assert!(matches!(load_definition(&text), Err(Error::Shape(_))));
        let text = EXAMPLE.replace("dim = 3", "dim = 4");
        assert!(matches!(load_definition(&text), Err(Error::Definition(_))));
        let text = EXAMPLE.replace("\"y + 2*x\", 1]", "\"y + 2*w\", 1]");
        assert!(matches!(load_definition(&text), Err(Error::UnknownIdentifier { .. })));
    }

    #[test]
    fn generators_section() {
        let text = r#"
[chart]
dim = 3
coords = ["t", "x", "y"]
base_point = [0, 0, 0]
[generators]
E = { coord = "t", rate = 2 }
[structure]
xi = [1, 0, 0]
eta = [1, 0, 0]
phi = [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
metric = [[1, 0, 0], [0, "E", 0], [0, 0, "-E"]]
"#;
        let d = load_definition(text).unwrap();
        assert_eq!(d.generators.len(), 1);
        assert_eq!(d.generators[0].rate, int(2));
        assert_eq!(load_definition(&d.to_toml()).unwrap(), d);
    }
}
