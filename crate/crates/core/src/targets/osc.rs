//! Oscillatory functions `z ↦ Σ_j Q_j(z) e^{i z P_j(k)}` and their polynomial part.

use std::collections::BTreeMap;
use std::fmt;

/// Phase polynomial in the frequencies: sorted `(exponents, integer coefficient)`, no zeros.
pub type Phase = Vec<(Vec<u32>, i64)>;

#[derive(Clone, Debug, PartialEq)]
pub struct OscillatoryFn {
    nfreq: usize,
    terms: BTreeMap<Phase, BTreeMap<u32, f64>>,
}

fn normalize_phase(raw: &[(Vec<u32>, i64)]) -> Phase {
    let mut m: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for (e, c) in raw {
        *m.entry(e.clone()).or_insert(0) += c;
    }
    m.into_iter().filter(|(_, c)| *c != 0).collect()
}

fn add_phases(a: &Phase, b: &Phase) -> Phase {
    let mut all = a.clone();
    all.extend(b.iter().cloned());
    normalize_phase(&all)
}

impl OscillatoryFn {
    pub fn zero(nfreq: usize) -> Self {
        OscillatoryFn {
            nfreq,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nfreq: usize) -> Self {
        Self::term(nfreq, &[(0, 1.0)], &[])
    }

    /// `Q(z)·e^{izP(k)}` with `Q` given by `(power, coeff)` and `P` by `(exponents, coeff)`.
    pub fn term(nfreq: usize, q: &[(u32, f64)], phase: &[(Vec<u32>, i64)]) -> Self {
        for (e, _) in phase {
            assert_eq!(e.len(), nfreq, "frequency count");
        }
        let mut out = Self::zero(nfreq);
        let mut poly = BTreeMap::new();
        for &(p, c) in q {
            *poly.entry(p).or_insert(0.0) += c;
        }
        out.push(normalize_phase(phase), poly);
        out
    }

    fn push(&mut self, phase: Phase, poly: BTreeMap<u32, f64>) {
        let slot = self.terms.entry(phase.clone()).or_default();
        for (p, c) in poly {
            *slot.entry(p).or_insert(0.0) += c;
        }
        slot.retain(|_, c| *c != 0.0);
        if slot.is_empty() {
            self.terms.remove(&phase);
        }
    }

    pub fn nfreq(&self) -> usize {
        self.nfreq
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Phase, &BTreeMap<u32, f64>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (ph, q) in &other.terms {
            out.push(ph.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = Self::zero(self.nfreq);
        for (ph, q) in &self.terms {
            out.push(ph.clone(), q.iter().map(|(p, v)| (*p, v * c)).collect());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nfreq);
        for (pa, qa) in &self.terms {
            for (pb, qb) in &other.terms {
                let mut prod: BTreeMap<u32, f64> = BTreeMap::new();
                for (ea, ca) in qa {
                    for (eb, cb) in qb {
                        *prod.entry(ea + eb).or_insert(0.0) += ca * cb;
                    }
                }
                out.push(add_phases(pa, pb), prod);
            }
        }
        out
    }

    /// `𝒬`: keeps exactly the zero-phase terms.
    pub fn project(&self) -> Self {
        let mut out = Self::zero(self.nfreq);
        if let Some(q) = self.terms.get(&Vec::new()) {
            out.push(Vec::new(), q.clone());
        }
        out
    }

    /// `z ↦ f(z)` at fixed frequencies, as a complex pair `(re, im)`.
    pub fn eval(&self, z: f64, k: &[f64]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (ph, q) in &self.terms {
            let amp: f64 = q.iter().map(|(p, c)| c * z.powi(*p as i32)).sum();
            let p: f64 = ph
                .iter()
                .map(|(e, c)| {
                    *c as f64
                        * e.iter()
                            .zip(k)
                            .map(|(&n, &kv)| kv.powi(n as i32))
                            .product::<f64>()
                })
                .sum();
            re += amp * (z * p).cos();
            im += amp * (z * p).sin();
        }
        (re, im)
    }
}

fn phase_text(ph: &Phase) -> String {
    let terms: Vec<String> = ph
        .iter()
        .map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(i, &n)| {
                    if n == 1 {
                        format!("k{}", i + 1)
                    } else {
                        format!("k{}^{n}", i + 1)
                    }
                })
                .collect();
            let mono = if mono.is_empty() {
                "1".to_string()
            } else {
                mono.join("*")
            };
            match (*c, mono.as_str()) {
                (_, "1") => format!("{c}"),
                (1, _) => mono,
                (-1, _) => format!("-{mono}"),
                _ => format!("{c}*{mono}"),
            }
        })
        .collect();
    terms.join(" + ")
}

impl fmt::Display for OscillatoryFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (ph, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let amp: Vec<String> = q
                .iter()
                .map(|(p, c)| {
                    let z = match p {
                        0 => String::new(),
                        1 => "z".to_string(),
                        _ => format!("z^{p}"),
                    };
                    match (z.is_empty(), *c == 1.0) {
                        (true, _) => format!("{c}"),
                        (false, true) => z,
                        (false, false) => format!("{c}*{z}"),
                    }
                })
                .collect();
            write!(f, "({})", amp.join(" + "))?;
            if !ph.is_empty() {
                write!(f, "*exp(iz({}))", phase_text(ph))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_keeps_polynomials() {
        let f = OscillatoryFn::term(1, &[(2, 3.0)], &[]).add(&OscillatoryFn::term(
            1,
            &[(1, 1.0)],
            &[(vec![1], 1)],
        ));
        assert_eq!(f.project(), OscillatoryFn::term(1, &[(2, 3.0)], &[]));
        let cancelled = OscillatoryFn::term(1, &[(0, 1.0)], &[(vec![1], 1), (vec![1], -1)]);
        assert_eq!(cancelled.project(), OscillatoryFn::one(1));
    }
}
