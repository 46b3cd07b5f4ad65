//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.
//!
//! `cargo test -p lehmer-cli --test acceptance`

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lehmer_core::ec::{self, count, WeierstrassCurve};
use lehmer_core::forms::{delta_eisenstein, delta_eta, eisenstein_coeffs, eta_quotient, ETA_QUOTIENT_LEVELS};
use lehmer_core::hecke::{coeff_prime_power, qexp_from_primes};
use lehmer_core::vanish::{classify, compute_mf, first_vanishing, zeros_up_to, DeltaSource};
use lehmer_core::{CoefficientOracle, FormSource, FormSpec, PrimeEigenvalues, QSeries};
use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 37a1 expansion and first zero at 8", Some(secs(1)), c1_37a1),
        ("2 53a1 expansion and a(3^5) = 0", Some(secs(1)), c2_53a1),
        ("3 M_f values 6, 3, 1", Some(secs(1)), c3_mf),
        ("4 tau(n) != 0 for n <= 100000", Some(secs(60)), c4_lehmer_scan),
        ("5 eta and Eisenstein routes to Delta agree", Some(secs(30)), c5_delta_routes),
        ("6 classifier matches brute-force recurrence", Some(secs(60)), c6_classifier),
        ("7 Hecke engine identities", None, c7_hecke),
        ("8 eta-quotient prime-square relation", None, c8_eta_quotients),
        ("9 point-counting strategies agree", None, c9_point_counts),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{elapsed:.2?}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} [{elapsed:.2?}] {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn fixture(label: &str) -> WeierstrassCurve {
    WeierstrassCurve::fixture(label).expect("fixture exists")
}

fn curve_expansion(label: &str, bound: usize) -> Result<QSeries, String> {
    let curve = fixture(label);
    let pe = ec::prime_table(&curve, bound as u64).map_err(|e| e.to_string())?;
    qexp_from_primes(&pe, bound).map_err(|e| e.to_string())
}

fn lehmer(args: &[&str]) -> Result<serde_json::Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lehmer"))
        .arg("--no-cache")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "lehmer {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn c1_37a1() -> Outcome {
    let expected = [0, 1, -2, -3, 2, -2, 6, -1, 0, 6];
    let got = curve_expansion("37a1", 9)?;
    ensure!(got == QSeries::from_i64s(&expected).unwrap(), "expansion {:?}", got.coeffs());
    let scan = lehmer(&["scan", "--fixture", "37a1", "--limit", "100"])?;
    ensure!(scan["first_zero"] == 8, "first_zero = {}", scan["first_zero"]);
    ensure!(scan["first_zero_is_prime"] == false, "first zero reported prime");
    Ok("a(8) = 0, 8 composite".into())
}

fn c2_53a1() -> Outcome {
    let expected = [0, 1, -1, -3, -1, 0, 3, -4, 3, 6];
    let got = curve_expansion("53a1", 9)?;
    ensure!(got == QSeries::from_i64s(&expected).unwrap(), "expansion {:?}", got.coeffs());
    let a3 = &got.coeffs()[3];
    for r in 1..=4 {
        let c = coeff_prime_power(a3, 3, r, 2, false);
        ensure!(!c.is_zero(), "a(3^{r}) = 0");
    }
    let c5 = coeff_prime_power(a3, 3, 5, 2, false);
    ensure!(c5.is_zero(), "a(3^5) = {c5}");
    Ok("a(3^r) != 0 for r < 5".into())
}

fn c3_mf() -> Outcome {
    let bound = 3000;
    let mut seen = Vec::new();
    for (label, want) in [("37a1", 6), ("53a1", 3), ("delta", 1)] {
        let (spec, series, source): (FormSpec, QSeries, Box<dyn lehmer_core::vanish::CoefficientSource>) =
            if label == "delta" {
                let s = delta_eta(bound).map_err(|e| e.to_string())?;
                (FormSpec::delta(), s, Box::new(DeltaSource::new()))
            } else {
                let curve = fixture(label);
                let pe = ec::prime_table(&curve, bound as u64).map_err(|e| e.to_string())?;
                let s = qexp_from_primes(&pe, bound).map_err(|e| e.to_string())?;
                let spec = FormSpec::new(2, curve.level().unwrap(), label, FormSource::EllipticCurve(curve))
                    .map_err(|e| e.to_string())?;
                (spec.clone(), s, Box::new(CoefficientOracle::new(spec, pe)))
            };
        let c = series.coeffs();
        let k = spec.weight();
        let mf = compute_mf(spec.level(), &c[2], &c[3], k);
        ensure!(mf.value == want, "M_f({label}) = {}, expected {want}", mf.value);

        let report = first_vanishing(source.as_ref(), bound, Some(mf.value)).map_err(|e| e.to_string())?;
        ensure!(report.guarantee_holds(), "{label}: first zero coprime to M_f is composite");
        // each kept prime really has a zero at a higher power, each dropped
        // good prime has none
        for f in &mf.justification {
            let p = f.prime;
            if f.divides_level {
                continue;
            }
            let zero_powers: Vec<u32> = (1..)
                .take_while(|&r| p.pow(r) <= bound as u64)
                .filter(|&r| c[p.pow(r) as usize].is_zero())
                .collect();
            if f.kept {
                ensure!(
                    zero_powers.iter().any(|&r| r > 1),
                    "{label}: kept {p} but no zero a({p}^r), r > 1, below {bound}"
                );
            } else {
                let vc = classify(&c[p as usize], p, k, false).map_err(|e| e.to_string())?;
                ensure!(
                    zeros_up_to(&vc, 64).iter().all(|&r| r == 1),
                    "{label}: dropped {p} but a({p}^r) vanishes for some r > 1"
                );
                ensure!(zero_powers.iter().all(|&r| r == 1), "{label}: dropped {p} yet zeros at {zero_powers:?}");
            }
        }
        seen.push(format!("{label}:{}", mf.value));
    }
    Ok(seen.join(" "))
}

fn c4_lehmer_scan() -> Outcome {
    let bound = 100_000;
    let report = first_vanishing(&DeltaSource::new(), bound, Some(1)).map_err(|e| e.to_string())?;
    ensure!(report.zeros.is_empty(), "zeros at {:?}", report.zeros);
    ensure!(report.first_zero.is_none(), "first_zero = {:?}", report.first_zero);
    ensure!(report.certification.len() == bound, "certified {} indices", report.certification.len());
    Ok(format!(
        "{} residue-certified, {} exact",
        report.residue_certified(),
        report.exact_checked()
    ))
}

fn c5_delta_routes() -> Outcome {
    let bound = 2000;
    let eta = delta_eta(bound).map_err(|e| e.to_string())?;
    let eis = delta_eisenstein(bound).map_err(|e| e.to_string())?;
    ensure!(eta == eis, "routes differ");
    let e4 = eisenstein_coeffs(2, bound).map_err(|e| e.to_string())?;
    let e6 = eisenstein_coeffs(3, bound).map_err(|e| e.to_string())?;
    let diff = e4.pow(3).sub(&e6.pow(2)).map_err(|e| e.to_string())?;
    let m = big(1728);
    for (n, c) in diff.coeffs().iter().enumerate() {
        ensure!((c % &m).is_zero(), "coefficient {n} of E4^3 - E6^2 is {c}");
        ensure!(c / &m == eta.coeffs()[n], "(E4^3 - E6^2)/1728 differs at {n}");
    }
    Ok(format!("n <= {bound}"))
}

/// Zeros of `r -> a(p^r)`, `1 <= r <= max_r`, by running the recurrence.
fn recurrence_zeros(ap: &BigInt, p: u64, k: u32, bad: bool, max_r: u32) -> Vec<u32> {
    let pk1 = BigInt::from(p).pow(k - 1);
    let (mut prev, mut cur) = (BigInt::one(), ap.clone());
    let mut zeros = Vec::new();
    for r in 1..=max_r {
        if cur.is_zero() {
            zeros.push(r);
        }
        let next = if bad { &cur * ap } else { &cur * ap - &pk1 * &prev };
        prev = std::mem::replace(&mut cur, next);
    }
    zeros
}

/// Exhaustive when the Hasse range is small, otherwise a central window, the
/// range ends, the arithmetically special values and seeded random draws.
fn sample_ap(p: u64, k: u32, rng: &mut StdRng) -> Vec<BigInt> {
    const EXHAUSTIVE: i64 = 10_000;
    const RANDOM: usize = 5_000;
    let pk1 = BigInt::from(p).pow(k - 1);
    // |a_p| <= 2 p^{(k-1)/2}  <=>  a_p^2 <= 4 p^{k-1}
    let hasse: BigInt = (BigInt::from(4) * &pk1).sqrt();
    let mut out: Vec<BigInt> = Vec::new();
    if hasse <= BigInt::from(EXHAUSTIVE) {
        let h: i64 = hasse.try_into().unwrap();
        return (-h..=h).map(big).collect();
    }
    out.extend((-20_000..=20_000).map(big));
    for t in 1..=4u32 {
        let sq = &pk1 * t;
        let root = sq.sqrt();
        for d in -2..=2 {
            let v: BigInt = &root + d;
            if v.abs() <= hasse {
                out.push(v.clone());
                out.push(-v);
            }
        }
    }
    out.push(hasse.clone());
    out.push(-hasse.clone());
    let h: i128 = (&hasse).try_into().expect("hasse bound fits in i128");
    for _ in 0..RANDOM {
        out.push(BigInt::from(rng.gen_range(-h..=h)));
    }
    out
}

fn c6_classifier() -> Outcome {
    const MAX_R: u32 = 100;
    let mut rng = StdRng::seed_from_u64(0x1e4e_3e12);
    let mut checked = 0usize;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for k in (2..=16).step_by(2) {
            for ap in sample_ap(p, k, &mut rng) {
                let vc = classify(&ap, p, k, false).map_err(|e| e.to_string())?;
                let want = recurrence_zeros(&ap, p, k, false, MAX_R);
                ensure!(zeros_up_to(&vc, MAX_R) == want, "p={p} k={k} a_p={ap}: {vc:?} vs {want:?}");
                checked += 1;
            }
            // bad primes: a_p^2 in {0, p^{k-2}}
            let half = BigInt::from(p).pow(k / 2 - 1);
            for ap in [BigInt::zero(), half.clone(), -half] {
                let vc = classify(&ap, p, k, true).map_err(|e| e.to_string())?;
                let want = recurrence_zeros(&ap, p, k, true, MAX_R);
                ensure!(zeros_up_to(&vc, MAX_R) == want, "bad p={p} k={k} a_p={ap}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (p, k, a_p) cases, 0 mismatches"))
}

fn c7_hecke() -> Outcome {
    let bound = 500;
    let delta = delta_eta(bound).map_err(|e| e.to_string())?;
    let pe = PrimeEigenvalues::from_series(&delta, 12, 1).map_err(|e| e.to_string())?;
    let rebuilt = qexp_from_primes(&pe, bound).map_err(|e| e.to_string())?;
    ensure!(rebuilt == delta, "qexp_from_primes differs from delta_eta");

    // sum a(p^r) X^r * (1 - a_p X + p^{k-1} X^2) = 1 mod X^31
    let mut rng = StdRng::seed_from_u64(0x0e12_0002);
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    for _ in 0..50 {
        let p = primes[rng.gen_range(0..primes.len())];
        let k = 2 * rng.gen_range(1..=12u32);
        let pk1 = BigInt::from(p).pow(k - 1);
        let h: i128 = (BigInt::from(4) * &pk1).sqrt().try_into().unwrap();
        let ap = BigInt::from(rng.gen_range(-h..=h));
        let a: Vec<BigInt> = (0..=30).map(|r| coeff_prime_power(&ap, p, r, k, false)).collect();
        for n in 0..=30usize {
            let mut c = a[n].clone();
            if n >= 1 {
                c -= &ap * &a[n - 1];
            }
            if n >= 2 {
                c += &pk1 * &a[n - 2];
            }
            let want = if n == 0 { BigInt::one() } else { BigInt::zero() };
            ensure!(c == want, "p={p} k={k} a_p={ap}: X^{n} coefficient {c}");
        }
    }
    Ok("n <= 500, 50 generating functions to X^30".into())
}

fn c8_eta_quotients() -> Outcome {
    let bound = 2500;
    let mut cases = 0;
    for n in ETA_QUOTIENT_LEVELS {
        let (spec, s) = eta_quotient(n, bound).map_err(|e| e.to_string())?;
        let c = s.coeffs();
        ensure!(c[1].is_one(), "N={n}: a(1) = {}", c[1]);
        let k = spec.weight();
        for p in (2u64..=50).filter(|&p| lehmer_core::arith::is_prime(p) && n % p != 0) {
            let ap = &c[p as usize];
            let want = ap * ap - BigInt::from(p).pow(k - 1);
            ensure!(c[(p * p) as usize] == want, "N={n} p={p}: a(p^2) = {}", c[(p * p) as usize]);
            cases += 1;
        }
    }
    Ok(format!("{cases} (N, p) pairs"))
}

fn c9_point_counts() -> Outcome {
    let mut cases = 0;
    for label in ["37a1", "53a1"] {
        let curve = fixture(label);
        for p in (2u64..=200).filter(|&p| lehmer_core::arith::is_prime(p) && !curve.is_bad_prime(p)) {
            let brute = p as i64 + 1 - count::nonsingular_enumeration(&curve, p) as i64;
            let fast = if p == 2 {
                p as i64 + 1 - count::enumeration(&curve, p) as i64
            } else {
                p as i64 + 1 - count::completed_square(&curve, p) as i64
            };
            ensure!(brute == fast, "{label} p={p}: {brute} vs {fast}");
            if p >= 5 {
                let leg = count::ap_depressed_legendre(&curve, p);
                ensure!(leg == brute, "{label} p={p}: Legendre {leg} vs {brute}");
            }
            ensure!(brute * brute <= 4 * p as i64, "{label} p={p}: Hasse violated by {brute}");
            let ap = ec::ap_good(&curve, p).map_err(|e| e.to_string())?;
            ensure!(ap == brute, "{label} p={p}: ap_good {ap}");
            cases += 1;
        }
    }
    Ok(format!("{cases} good primes"))
}
