//! Text and JSON renderings of library values.

use riordan_core::fps::fmt_rational;
use riordan_core::multi_almost::{stride_terms, MultiAlmostSpec, SequenceChar};
use riordan_core::{CellFailure, Rational, Series, Verification};
use serde_json::{json, Value};

pub fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(fmt_rational).collect()
}

pub fn line(label: &str, xs: &[Rational]) -> String {
    format!("{label}: {}", strings(xs).join(" "))
}

fn coeffs(s: &Series) -> Vec<Rational> {
    s.coeffs().to_vec()
}

pub fn spec_text(spec: &MultiAlmostSpec) -> String {
    let mut out = vec![line("b", &coeffs(spec.b())), line("g", &coeffs(spec.g()))];
    for (j, f) in spec.f().iter().enumerate() {
        out.push(line(&format!("f{}", j + 1), &coeffs(f)));
    }
    out.join("\n")
}

pub fn spec_json(spec: &MultiAlmostSpec) -> Value {
    let f: Vec<_> = spec.f().iter().map(|f| strings(f.coeffs())).collect();
    json!({
        "ell": spec.ell(),
        "precision": spec.precision(),
        "b": strings(spec.b().coeffs()),
        "g": strings(spec.g().coeffs()),
        "f": f,
    })
}

/// Sequence coefficients in `t^l`, `count` terms each.
pub struct SeqLists {
    pub a: Vec<Rational>,
    pub z: Vec<Vec<Rational>>,
    pub w: Vec<Rational>,
}

impl SeqLists {
    pub fn new(seq: &SequenceChar, count: usize) -> Self {
        SeqLists {
            a: stride_terms(&seq.a, seq.ell, count),
            z: seq.z.iter().map(|z| stride_terms(z, seq.ell, count)).collect(),
            w: stride_terms(&seq.w, seq.ell, count),
        }
    }

    pub fn text(&self, ell: usize) -> String {
        let mut out = vec![format!("sequences in t^{ell}"), line("A", &self.a)];
        for (m, z) in self.z.iter().enumerate() {
            out.push(line(&format!("Z{}", m + 1), z));
        }
        out.push(line("W", &self.w));
        out.join("\n")
    }

    pub fn json(&self, ell: usize) -> Value {
        let z: Vec<_> = self.z.iter().map(|z| strings(z)).collect();
        json!({ "ell": ell, "A": strings(&self.a), "Z": z, "W": strings(&self.w) })
    }
}

fn failure_json(c: &CellFailure) -> Value {
    json!({
        "row": c.row,
        "col": c.col,
        "expected": fmt_rational(&c.expected),
        "found": fmt_rational(&c.found),
    })
}

/// One named check and its verdict.
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
    pub failure: Option<Value>,
}

impl Check {
    pub fn cells(name: impl Into<String>, v: &Verification) -> Self {
        Check {
            name: name.into(),
            ok: v.is_ok(),
            detail: v.to_string(),
            failure: v.first_failure().map(failure_json),
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            ok,
            detail: detail.into(),
            failure: None,
        }
    }

    pub fn text(&self) -> String {
        format!("{}: {}", self.name, self.detail)
    }

    pub fn json(&self) -> Value {
        let mut v = json!({ "name": self.name, "ok": self.ok, "detail": self.detail });
        if let Some(f) = &self.failure {
            v["first_failure"] = f.clone();
        }
        v
    }
}

pub fn checks_json(checks: &[Check]) -> Value {
    Value::Array(checks.iter().map(Check::json).collect())
}
