use serde_json::{json, Map, Value};

use super::{parse_forest, parse_tree, Forest, Tree};
use crate::error::{Error, Result};
use crate::linear::{parse_q, q_to_string, LinComb, Q};
use crate::multiindex::MultiIndex;

/// Text, LaTeX and JSON renderings of sum keys.
pub trait Render: Sized {
    fn text(&self) -> String;
    fn latex(&self) -> String;
    /// Named JSON fields describing the key (`tree`, or `left`/`right`).
    fn json_fields(&self) -> Map<String, Value>;
    fn from_json_fields(v: &Value, dim: usize) -> Result<Self>;
}

fn index_text(k: &MultiIndex) -> String {
    if k.len() == 1 {
        k.entries()[0].to_string()
    } else {
        k.to_string()
    }
}

fn monomial_text(k: &MultiIndex) -> String {
    if *k == MultiIndex::unit(k.len(), 0) {
        "X".to_string()
    } else {
        format!("X^{k}")
    }
}

fn monomial_latex(k: &MultiIndex) -> String {
    if k.len() == 1 {
        match k.entries()[0] {
            1 => "X".to_string(),
            n => format!("X^{{{n}}}"),
        }
    } else {
        k.entries()
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(i, &n)| {
                if n == 1 {
                    format!("X_{{{i}}}")
                } else {
                    format!("X_{{{i}}}^{{{n}}}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Render for Tree {
    fn text(&self) -> String {
        let mut parts = Vec::new();
        if !self.root().is_zero() {
            parts.push(monomial_text(self.root()));
        }
        for (e, c) in self.branches() {
            let head = if e.hat { 'J' } else { 'I' };
            parts.push(format!(
                "{head}[{},{}]({})",
                e.label,
                index_text(&e.deriv),
                c.text()
            ));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    fn latex(&self) -> String {
        let mut parts = Vec::new();
        if !self.root().is_zero() {
            parts.push(monomial_latex(self.root()));
        }
        for (e, c) in self.branches() {
            let head = if e.hat {
                r"\hat{\mathcal{J}}"
            } else {
                r"\mathcal{I}"
            };
            parts.push(format!(
                r"{head}_{{({},{})}}({})",
                e.label,
                index_text(&e.deriv),
                c.latex()
            ));
        }
        if parts.is_empty() {
            r"\mathbf{1}".to_string()
        } else {
            parts.join(" ")
        }
    }

    fn json_fields(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("tree".into(), Value::String(self.text()));
        m
    }

    fn from_json_fields(v: &Value, dim: usize) -> Result<Self> {
        parse_tree(str_field(v, "tree")?, dim)
    }
}

impl Render for Forest {
    fn text(&self) -> String {
        if self.is_empty() {
            "1".to_string()
        } else {
            self.trees()
                .iter()
                .map(Tree::text)
                .collect::<Vec<_>>()
                .join(" . ")
        }
    }

    fn latex(&self) -> String {
        if self.is_empty() {
            r"\mathbf{1}_1".to_string()
        } else {
            self.trees()
                .iter()
                .map(|t| format!("({})", t.latex()))
                .collect::<Vec<_>>()
                .join(r" \cdot ")
        }
    }

    fn json_fields(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("forest".into(), Value::String(self.text()));
        m
    }

    fn from_json_fields(v: &Value, dim: usize) -> Result<Self> {
        parse_forest(str_field(v, "forest")?, dim)
    }
}

fn str_field<'a>(v: &'a Value, name: &str) -> Result<&'a str> {
    v.get(name)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Json(format!("missing string field `{name}`")))
}

/// Keys printed as one string in tensor positions.
pub trait Leg: Sized {
    fn leg_text(&self) -> String;
    fn leg_latex(&self) -> String;
    fn parse_leg(s: &str, dim: usize) -> Result<Self>;
}

impl Leg for Tree {
    fn leg_text(&self) -> String {
        self.text()
    }
    fn leg_latex(&self) -> String {
        self.latex()
    }
    fn parse_leg(s: &str, dim: usize) -> Result<Self> {
        parse_tree(s, dim)
    }
}

impl Leg for Forest {
    fn leg_text(&self) -> String {
        self.text()
    }
    fn leg_latex(&self) -> String {
        self.latex()
    }
    fn parse_leg(s: &str, dim: usize) -> Result<Self> {
        parse_forest(s, dim)
    }
}

impl<A: Leg, B: Leg> Render for (A, B) {
    fn text(&self) -> String {
        format!("{} ⊗ {}", self.0.leg_text(), self.1.leg_text())
    }

    fn latex(&self) -> String {
        format!(r"{} \otimes {}", self.0.leg_latex(), self.1.leg_latex())
    }

    fn json_fields(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("left".into(), Value::String(self.0.leg_text()));
        m.insert("right".into(), Value::String(self.1.leg_text()));
        m
    }

    fn from_json_fields(v: &Value, dim: usize) -> Result<Self> {
        Ok((
            A::parse_leg(str_field(v, "left")?, dim)?,
            B::parse_leg(str_field(v, "right")?, dim)?,
        ))
    }
}

impl<A: Leg, B: Leg, C: Leg> Render for (A, B, C) {
    fn text(&self) -> String {
        format!(
            "{} ⊗ {} ⊗ {}",
            self.0.leg_text(),
            self.1.leg_text(),
            self.2.leg_text()
        )
    }

    fn latex(&self) -> String {
        format!(
            r"{} \otimes {} \otimes {}",
            self.0.leg_latex(),
            self.1.leg_latex(),
            self.2.leg_latex()
        )
    }

    fn json_fields(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("left".into(), Value::String(self.0.leg_text()));
        m.insert("middle".into(), Value::String(self.1.leg_text()));
        m.insert("right".into(), Value::String(self.2.leg_text()));
        m
    }

    fn from_json_fields(v: &Value, dim: usize) -> Result<Self> {
        Ok((
            A::parse_leg(str_field(v, "left")?, dim)?,
            B::parse_leg(str_field(v, "middle")?, dim)?,
            C::parse_leg(str_field(v, "right")?, dim)?,
        ))
    }
}

fn coeff_prefix(c: &Q, first: bool, latex: bool) -> String {
    let neg = *c < Q::from_integer(0);
    let mag = if neg { -*c } else { *c };
    let sign = match (first, neg) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    if mag == Q::from_integer(1) {
        sign.to_string()
    } else if latex && *mag.denom() != 1 {
        format!("{sign}\\tfrac{{{}}}{{{}}} ", mag.numer(), mag.denom())
    } else {
        format!("{sign}{} ", q_to_string(&mag))
    }
}

/// `text` or `latex` rendering of a rational combination; `0` when empty.
pub fn format_sum<K: Ord + Clone + Render>(s: &LinComb<K>, latex: bool) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in s.iter().enumerate() {
        out.push_str(&coeff_prefix(c, i == 0, latex));
        out.push_str(&if latex { k.latex() } else { k.text() });
    }
    out
}

/// JSON list of `{coeff, ...key fields}`.
pub fn sum_to_json<K: Ord + Clone + Render>(s: &LinComb<K>) -> Value {
    Value::Array(
        s.iter()
            .map(|(k, c)| {
                let mut m = k.json_fields();
                m.insert("coeff".into(), json!(q_to_string(c)));
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn sum_from_json<K: Ord + Clone + Render>(v: &Value, dim: usize) -> Result<LinComb<K>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Json("expected a list of terms".into()))?;
    let mut out = LinComb::zero();
    for item in arr {
        let c = str_field(item, "coeff")?;
        let q = parse_q(c).ok_or_else(|| Error::Json(format!("bad coefficient `{c}`")))?;
        out.add_term(K::from_json_fields(item, dim)?, q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{TensorSum, TreeSum};

    #[test]
    fn sums_round_trip_through_json() {
        let t = parse_tree("I[t,0](1)", 1).unwrap();
        let x = parse_tree("X", 1).unwrap();
        let mut s = TensorSum::zero();
        s.add_term((t.clone(), Tree::one(1)), Q::from_integer(1));
        s.add_term((x.clone(), t.clone()), Q::new(-1, 2));
        let back: TensorSum = sum_from_json(&sum_to_json(&s), 1).unwrap();
        assert_eq!(back, s);
        let ts: TreeSum = LinComb::term(x, Q::new(3, 2));
        assert_eq!(format_sum(&ts, false), "3/2 X");
        assert_eq!(format_sum(&ts, true), r"\tfrac{3}{2} X");
    }
}
