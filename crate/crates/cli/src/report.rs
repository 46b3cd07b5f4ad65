//! JSON renderings. Objects are `serde_json::Map`s (BTreeMap-backed), so keys
//! come out sorted and identical inputs give byte-identical output.

use lehmer_core::vanish::{zeros_up_to, Certification, MfResult, ScanReport, VanishClass, VanishKind};
use lehmer_core::{FormSpec, QSeries, ResidueSeries};
use num_bigint::BigInt;
use num_traits::Pow;
use serde_json::{json, Map, Value};

/// Exponent range shown in `zeros_sample`.
pub const ZEROS_SAMPLE_RANGE: u32 = 24;

pub fn big(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse().expect("decimal integer is a JSON number"))
}

pub fn form(spec: &FormSpec) -> Value {
    json!({
        "character": spec.character().to_string(),
        "label": spec.label(),
        "level": spec.level(),
        "weight": spec.weight(),
    })
}

pub fn classification(vc: &VanishClass) -> Value {
    let mut m = Map::new();
    let kind = match vc.kind {
        VanishKind::ApZero => "ap_zero",
        VanishKind::PeriodicZeros { order } => {
            m.insert("order".into(), order.into());
            "periodic"
        }
        VanishKind::NeverZero => "never_zero",
        VanishKind::BadPrimePower { .. } => "bad_prime_power",
    };
    m.insert("kind".into(), kind.into());
    if let Some(w) = vc.witness {
        m.insert("witness".into(), w.into());
    }
    m.insert("zeros_sample".into(), json!(zeros_up_to(vc, ZEROS_SAMPLE_RANGE)));
    Value::Object(m)
}

pub fn mf(spec: &FormSpec, r: &MfResult) -> Value {
    let k = spec.weight();
    let mut reasons = Map::new();
    for f in &r.justification {
        let p = f.prime;
        let text = if f.divides_level {
            format!("dropped: {p} divides N = {}", spec.level())
        } else if f.exceptional {
            format!("kept: a({p}) = {} = +-{p}^(k/2)", f.eigenvalue)
        } else {
            format!(
                "dropped: a({p}) = {} != +-{p}^(k/2) = +-{}",
                f.eigenvalue,
                BigInt::from(p).pow(k / 2)
            )
        };
        reasons.insert(p.to_string(), text.into());
    }
    json!({
        "form": form(spec),
        "kept": r.factors_kept,
        "mf": r.value,
        "reasons": reasons,
    })
}

pub fn scan(r: &ScanReport, mf: Option<&MfResult>) -> Value {
    let mut moduli: Vec<u64> = r
        .certification
        .iter()
        .filter_map(|c| match c {
            Certification::Residue { modulus } => Some(*modulus),
            Certification::Exact => None,
        })
        .collect();
    moduli.sort_unstable();
    moduli.dedup();
    json!({
        "bad_prime_zeros": r.bad_prime_zeros,
        "bound": r.bound,
        "certification": {
            "exact": r.exact_checked(),
            "moduli": moduli,
            "residue": r.residue_certified(),
        },
        "coprime_to": r.coprime_to,
        "first_zero": r.first_zero,
        "first_zero_coprime": r.first_zero_coprime,
        "first_zero_coprime_is_prime": r.first_zero_coprime_is_prime,
        "first_zero_is_prime": r.first_zero_is_prime,
        "form": form(&r.form),
        "guarantee_holds": r.guarantee_holds(),
        "mf": mf.map(|m| m.value),
        "zeros": r.zeros,
    })
}

pub fn coefficients(spec: &FormSpec, series: &QSeries) -> Value {
    json!({
        "bound": series.trunc_bound(),
        "coefficients": series.coeffs()[1..].iter().map(big).collect::<Vec<_>>(),
        "constant": big(&series.coeffs()[0]),
        "form": form(spec),
    })
}

pub fn residues(spec: &FormSpec, lanes: &[ResidueSeries]) -> Value {
    let mut by_modulus = Map::new();
    for lane in lanes {
        by_modulus.insert(lane.modulus().to_string(), json!(lane.coeffs()[1..]));
    }
    json!({
        "bound": lanes.first().map(|l| l.trunc_bound()),
        "form": form(spec),
        "moduli": lanes.iter().map(|l| l.modulus()).collect::<Vec<_>>(),
        "residues": by_modulus,
    })
}

/// Text residue lane: the usual header plus `# moduli:`, then
/// `<n> <r_1> ... <r_k>` rows.
pub fn residues_text(spec: &FormSpec, lanes: &[ResidueSeries]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "# weight: {}", spec.weight()).unwrap();
    writeln!(out, "# level: {}", spec.level()).unwrap();
    writeln!(out, "# character: {}", spec.character()).unwrap();
    writeln!(out, "# label: {}", spec.label()).unwrap();
    let moduli: Vec<String> = lanes.iter().map(|l| l.modulus().to_string()).collect();
    writeln!(out, "# moduli: {}", moduli.join(" ")).unwrap();
    let bound = lanes.first().map_or(0, |l| l.trunc_bound());
    for n in 1..=bound {
        write!(out, "{n}").unwrap();
        for lane in lanes {
            write!(out, " {}", lane.coeffs()[n]).unwrap();
        }
        out.push('\n');
    }
    out
}
