//! Verification reports and the constants the drivers check against.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Result;
use crate::modular::HSolution;
use crate::rational::Rational;
use crate::ring::{FormPoly, PontPoly};

/// Every numeric constant that appears in a stated identity.
///
/// The drivers read their constants from here so that a single value can
/// be perturbed and the corresponding verification observed to fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    /// `8` in `{L̂}^{(12)} = {8Â ch(T) − 32Â}^{(12)}`.
    pub agw_twist: i64,
    /// `32` in the same formula.
    pub agw_shift: i64,
    /// Leading factor of the degree-(8k+2) formula.
    pub factor_8k2: i64,
    /// Leading factor of the degree-(8k+6) formula.
    pub factor_8k6: i64,
    /// `24` in the `(2k+1)`-correction of `h₁`.
    pub h1_shift: i64,
    /// `2` in the denominator `2 sinh(e/2)`.
    pub sinh_scale: i64,
    /// `{8, −32, −24}`: twisted formula in dimension 12.
    pub twisted_12: [i64; 3],
    /// `{−4, 112, 8}`: `d = 6, n = 1`.
    pub cor_6_1: [i64; 3],
    /// `−128`: `d = 6, n = 2`.
    pub cor_6_2: i64,
    /// `{−2, 52, 2}`: `d = 5, n = 0`.
    pub cor_5_0: [i64; 3],
    /// `−64`: `d = 5, n = 1`.
    pub cor_5_1: i64,
    /// `6` in the block weights `2^{6k−6r}`.
    pub block_exp: i64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            agw_twist: 8,
            agw_shift: 32,
            factor_8k2: 8,
            factor_8k6: 64,
            h1_shift: 24,
            sinh_scale: 2,
            twisted_12: [8, -32, -24],
            cor_6_1: [-4, 112, 8],
            cor_6_2: -128,
            cor_5_0: [-2, 52, 2],
            cor_5_1: -64,
            block_exp: 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// One named sub-check of a verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComboEntry {
    pub j: usize,
    pub c: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct HEntry {
    pub r: usize,
    pub form: String,
    pub combo: Vec<ComboEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
    pub h: Vec<HEntry>,
    pub residual_max_order_checked: Option<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub lhs_form: PontPoly,
    #[serde(skip)]
    pub rhs_form: PontPoly,
    #[serde(skip)]
    pub h_forms: Vec<PontPoly>,
}

impl VerificationReport {
    /// Starts a report comparing `lhs` and `rhs`; the identity itself is
    /// recorded as the first check.
    pub fn new(theorem: &str, params: Map<String, Value>, lhs: &FormPoly, rhs: &FormPoly) -> Result<Self> {
        let lhs_form = lhs.to_pontryagin()?;
        let rhs_form = rhs.to_pontryagin()?;
        let diff = (lhs - rhs).to_pontryagin()?;
        let mut report = VerificationReport {
            theorem: theorem.to_string(),
            params,
            status: Status::Pass,
            lhs: lhs_form.render(),
            rhs: rhs_form.render(),
            difference: diff.render(),
            h: Vec::new(),
            residual_max_order_checked: None,
            notes: Vec::new(),
            checks: Vec::new(),
            lhs_form,
            rhs_form,
            h_forms: Vec::new(),
        };
        report.check("identity", diff.is_zero());
        Ok(report)
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.checks.push(Check { name: name.to_string(), passed });
        self.notes.push(format!("check {name}: {}", if passed { "pass" } else { "fail" }));
        if !passed {
            self.status = Status::Fail;
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Records a modular solve: coefficient forms, combinations and the
    /// residual check.
    pub fn attach_solution(&mut self, sol: &HSolution) -> Result<()> {
        self.h.clear();
        self.h_forms.clear();
        for (r, (h, row)) in sol.h.iter().zip(&sol.combo).enumerate() {
            let p = h.to_pontryagin()?;
            self.h.push(HEntry {
                r,
                form: p.render(),
                combo: row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| ComboEntry { j, c: c.clone() })
                    .collect(),
            });
            self.h_forms.push(p);
        }
        self.residual_max_order_checked = Some(sol.max_order_checked());
        self.check("residual", sol.residual_is_zero());
        Ok(())
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        let _ = writeln!(out, "{} [{}]: {}", self.theorem, params.join(", "), self.status.as_str());
        let _ = writeln!(out, "  lhs: {}", self.lhs);
        let _ = writeln!(out, "  rhs: {}", self.rhs);
        let _ = writeln!(out, "  difference: {}", self.difference);
        for h in &self.h {
            let combo: Vec<String> = h.combo.iter().map(|c| format!("{}*P{}", c.c, c.j)).collect();
            let _ = writeln!(out, "  h{} = {}  [{}]", h.r, h.form, combo.join(" + "));
        }
        if let Some(o) = &self.residual_max_order_checked {
            let _ = writeln!(out, "  residual checked through q^{{{o}}}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "  {n}");
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Builds a params map from `(key, value)` pairs.
pub fn params<I>(items: I) -> Map<String, Value>
where
    I: IntoIterator<Item = (&'static str, Value)>,
{
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
