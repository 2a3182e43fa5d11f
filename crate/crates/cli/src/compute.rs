//! `compute`: print individual quantities rather than pass/fail checks.

use carlitz_core::anderson_thakur::{omega_product, pi_tilde};
use carlitz_core::carlitz::{closed_form_d, closed_form_l, exp_log_coeffs, phi_inverse_s, CarlitzContext, Convention};
use carlitz_core::field::{FieldTower, LaurentSeries};
use carlitz_core::Result;
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// d_n and l_n of the Carlitz exponential and logarithm, by recursion and by product.
    ExpCoeffs,
    /// Fundamental period as ρ times a series in u = 1/θ.
    PiTilde,
    /// t-expansion of the Anderson-Thakur function.
    Omega,
    /// Coefficients of φ(1/s) over Q(s).
    PhiInverseS,
}

/// A computed quantity in tabular form plus its JSON document.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializes") + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory csv");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory csv");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            Format::Text => {
                let width = self.header.iter().map(|h| h.len()).max().unwrap_or(0);
                let mut out = String::new();
                for r in &self.rows {
                    out += &r[0];
                    out.push('\n');
                    for (h, c) in self.header.iter().zip(r).skip(1) {
                        out += &format!("  {h:<width$}  {c}\n");
                    }
                }
                out
            }
        }
    }
}

/// Exact polynomials in θ read as such; anything else in `u = 1/θ`.
fn theta_form(x: &LaurentSeries) -> String {
    if !x.is_exact() || x.terms().iter().any(|&(e, _)| e > 0) {
        return x.to_string();
    }
    let t = x.tower();
    let parts: Vec<String> = x
        .terms()
        .iter()
        .map(|&(e, c)| {
            let c = t.format(c);
            let c = if c.contains('+') { format!("({c})") } else { c };
            match (-e, c.as_str()) {
                (0, _) => c,
                (1, "1") => "θ".into(),
                (n, "1") => format!("θ^{n}"),
                (1, _) => format!("{c}θ"),
                (n, _) => format!("{c}θ^{n}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn compute(what: Quantity, n: Option<usize>, cfg: &RunConfig) -> Result<Table> {
    match what {
        Quantity::ExpCoeffs => exp_coeffs(cfg.q.unwrap_or(2), cfg.ext_deg, n.unwrap_or(6), cfg.u(80)),
        Quantity::PiTilde => {
            let q = cfg.q.unwrap_or(3);
            let u = cfg.u(40);
            let t = FieldTower::new(q, 1, u + 8)?;
            let p = pi_tilde(&t, u)?;
            let rho = format!("rho^{}", p.rho_deg());
            let body = p.body().to_string();
            Ok(Table {
                header: vec!["radical", "body"],
                rows: vec![vec![rho, body]],
                json: json!({ "q": q, "u_prec": u, "value": p.to_json() }),
            })
        }
        Quantity::Omega => {
            let q = cfg.q.unwrap_or(3);
            let (tp, u) = (n.unwrap_or(cfg.t(6)), cfg.u(30));
            let t = FieldTower::new(q, 1, u + 20)?;
            let w = omega_product(&t, tp, u)?;
            let rows = w
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| vec![k.to_string(), format!("rho^{}", c.rho_deg()), c.body().to_string()])
                .collect();
            Ok(Table { header: vec!["t^k", "radical", "body"], rows, json: json!({ "q": q, "u_prec": u, "value": w.to_json() }) })
        }
        Quantity::PhiInverseS => {
            let order = n.unwrap_or(cfg.tau_order);
            let (_, rows) = phi_inverse_s(order)?;
            let sign = |s: Option<i8>| s.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            let table = rows
                .iter()
                .map(|r| vec![r.order.to_string(), r.coefficient.clone(), sign(r.rising_sign), sign(r.falling_sign)])
                .collect();
            Ok(Table {
                header: vec!["j", "coefficient", "rising_sign", "falling_sign"],
                rows: table,
                json: json!({ "tau_order": order, "rows": rows }),
            })
        }
    }
}

fn exp_coeffs(q: u64, d: u32, n: usize, u: i64) -> Result<Table> {
    let t = FieldTower::new(q, d, u)?;
    let ctx = CarlitzContext::new(LaurentSeries::theta(&t), Convention::New, 1, n + 1);
    let c = exp_log_coeffs(&ctx, n)?;
    let mut rows = Vec::new();
    let mut doc = Vec::new();
    for (name, vals, closed) in [
        ("d", &c.d, (0..=n).map(|k| closed_form_d(&ctx, k)).collect::<Vec<_>>()),
        ("l", &c.l, (0..=n).map(|k| closed_form_l(&ctx, k)).collect()),
    ] {
        for k in 0..=n {
            let agree = vals[k] == closed[k];
            rows.push(vec![format!("{name}_{k}"), theta_form(&vals[k]), theta_form(&closed[k]), agree.to_string()]);
            doc.push(json!({
                "name": format!("{name}_{k}"),
                "recursion": vals[k].to_json(),
                "closed_form": closed[k].to_json(),
                "agree": agree,
            }));
        }
    }
    Ok(Table {
        header: vec!["coefficient", "recursion", "closed_form", "agree"],
        rows,
        json: json!({ "q": q, "ext_deg": d, "n": n, "convention": "new", "coefficients": doc, "first_mismatch": c.closed_form_mismatch }),
    })
}
