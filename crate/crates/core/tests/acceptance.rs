//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Each criterion also has a wall-clock budget.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gw1::cli::{render_hypersurface, Emit, Output};
use gw1::mirror::{self, HypersurfaceConfig, MirrorData};
use gw1::rational::{int, Rational};
use gw1::regression::{fingerprint, Pin, RegressionStore};
use gw1::selftest::{dilaton_keys, multisets, random_tilde_instance, theta_empty_value, two_theorem_gap};
use gw1::series::TPoly;
use gw1::taut::{bracket, bracket_closed_psitop, dilaton_step, TautKey};
use gw1::theta::{theta_closed, theta_recursive, ThetaKey, ThetaRecursive};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn closed_form_bracket() -> Outcome {
    let mut checked = 0;
    for i in 1..=6u32 {
        for j in 0..=6u32 {
            let key = TautKey::new(i, vec![0; j as usize], (i + j) as i64);
            let (got, want) = (bracket(&key), bracket_closed_psitop(i, j));
            if got != want {
                return Err(format!("{key}: {got} != {want}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} keys"))
}

fn dilaton_consistency() -> Outcome {
    let mut applicable = 0;
    for key in dilaton_keys(5, 5, 5) {
        if let Ok(step) = dilaton_step(&key) {
            let direct = bracket(&key);
            if direct != step {
                return Err(format!("{key}: bracket {direct} != dilaton {step}"));
            }
            applicable += 1;
        }
    }
    Ok(format!("{applicable} applicable keys"))
}

fn theta_special_values() -> Outcome {
    let mut checked = 0;
    for m in 1..=5u32 {
        for c in multisets(4, 4) {
            let total: i64 = c.iter().sum();
            let len = c.len() as i64;
            let want = if c.is_empty() {
                theta_empty_value(m)
            } else if total < len {
                Rational::zero()
            } else {
                continue;
            };
            let key = ThetaKey::new(m, c.iter().map(|&x| x as u32).collect()).unwrap();
            let got = theta_closed(&key);
            if got != want {
                return Err(format!("m={m} c={c:?}: {got} != {want}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} keys"))
}

fn theta_two_paths() -> Outcome {
    let (mut applicable, mut skipped) = (0, 0);
    for m in 1..=4u32 {
        for c in multisets(4, 4) {
            let key = ThetaKey::new(m, c.iter().map(|&x| x as u32).collect()).unwrap();
            match theta_recursive(&key) {
                ThetaRecursive::Value(rec) => {
                    let closed = theta_closed(&key);
                    if closed != rec {
                        return Err(format!("m={m} c={c:?}: closed {closed} != recursive {rec}"));
                    }
                    applicable += 1;
                }
                ThetaRecursive::Inapplicable => skipped += 1,
            }
        }
    }
    Ok(format!("{applicable} applicable keys, {skipped} without a reduction rule"))
}

fn two_theorem_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_241_015);
    let (mut tables, mut nonzero) = (0, 0);
    while tables < 128 {
        let (problem, table) = random_tilde_instance(&mut rng);
        if let Some(gap) = two_theorem_gap(&problem, &table).map_err(|e| e.to_string())? {
            return Err(format!("table {tables}: {gap}"));
        }
        if !gw1::diff::diff_thm2(&problem, &table, gw1::diff::Missing::AssumeZero).unwrap().is_zero() {
            nonzero += 1;
        }
        tables += 1;
    }
    Ok(format!("{tables} tables, {nonzero} with a nonzero difference"))
}

fn build(n: u32, d: usize) -> Result<MirrorData, String> {
    let config = HypersurfaceConfig::new(n, d).map_err(|e| e.to_string())?;
    MirrorData::build(&config).map_err(|e| format!("n={n}: {e}"))
}

fn mirror_identity_shape() -> Outcome {
    for n in 3..=8 {
        let data = build(n, 6)?;
        let shape = mirror::untwisted_rbar(&data.rbar, &data.t_minus_t).map_err(|e| e.to_string())?;
        mirror::check_identity_shape(&shape).map_err(|e| format!("n={n}: {e}"))?;
    }
    Ok("n = 3..8".into())
}

fn diagonal_units() -> Outcome {
    for n in 3..=10u32 {
        let data = build(n, 8)?;
        let top = (data.config.w_order()).min(n as usize - 2);
        for p in 0..=top {
            let ipp = &data.ipp[p];
            if !ipp.is_t_free() || ipp.coeff(0) != &TPoly::one() {
                return Err(format!("n={n}: I_({p},{p}) = {ipp}"));
            }
        }
        if !data.t_minus_t.is_t_free() {
            return Err(format!("n={n}: T - t depends on t"));
        }
        for p in 2..=n as usize - 2 {
            let slice = data.dln(p).ok_or_else(|| format!("n={n}: no log slice {p}"))?;
            if !slice.is_t_free() {
                return Err(format!("n={n}: log slice {p} depends on t"));
            }
        }
    }
    Ok("n = 3..10".into())
}

fn z_product_identity() -> Outcome {
    for n in 5..=8 {
        let routes = build(n, 6)?.f1_difference_routes().map_err(|e| e.to_string())?;
        if routes.z_products != routes.log_slices {
            return Err(format!("n={n}: {} != {}", routes.z_products, routes.log_slices));
        }
    }
    Ok("n = 5..8".into())
}

fn cancellation_identity() -> Outcome {
    for n in 3..=8 {
        let data = build(n, 6)?;
        let standard = data.f1_standard().map_err(|e| e.to_string())?;
        let reduced = data.f1_reduced().map_err(|e| e.to_string())?;
        let difference = data.f1_difference().map_err(|e| e.to_string())?;
        if standard.sub(&reduced).map_err(|e| e.to_string())? != difference {
            return Err(format!("n={n}: standard - reduced != difference"));
        }
    }
    Ok("n = 3..8".into())
}

fn hypergeometric_spot_values() -> Outcome {
    let data = build(5, 2)?;
    let row = data.r.coeff(0);
    let got = (row.coeff(1).clone(), row.coeff(2).clone(), data.t_minus_t.coeff(1).clone());
    let want = (TPoly::constant(int(120)), TPoly::constant(int(113400)), TPoly::constant(int(770)));
    if got != want {
        return Err(format!("got {got:?}"));
    }
    Ok("120, 113400, 770".into())
}

fn regression_stability() -> Outcome {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/pins.json");
    let mut store = RegressionStore::open(&path).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for n in [5u32, 6] {
        let first = render_hypersurface(n, 8, Output::Json, Emit::All, false).map_err(|e| e.to_string())?;
        let second = render_hypersurface(n, 8, Output::Json, Emit::All, false).map_err(|e| e.to_string())?;
        if first != second {
            return Err(format!("n={n}: two runs differ"));
        }
        let key =
            fingerprint("hypersurface", &[("n", n.to_string()), ("max_degree", "8".into()), ("emit", "all".into())]);
        match store.check_or_record(&key, &first).map_err(|e| e.to_string())? {
            Pin::Matched => notes.push(format!("n={n} matches pin")),
            Pin::Recorded => notes.push(format!("n={n} pinned")),
        }
    }
    Ok(notes.join(", "))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("closed-form bracket", Duration::from_secs(1), closed_form_bracket),
        ("dilaton consistency", Duration::from_secs(10), dilaton_consistency),
        ("theta special values", Duration::from_secs(10), theta_special_values),
        ("theta two-path equality", Duration::from_secs(30), theta_two_paths),
        ("two-theorem equivalence", Duration::from_secs(60), two_theorem_equivalence),
        ("mirror-identity shape", Duration::from_secs(60), mirror_identity_shape),
        ("diagonal units and t-freeness", Duration::from_secs(60), diagonal_units),
        ("Z-product identity", Duration::from_secs(120), z_product_identity),
        ("cancellation identity", Duration::from_secs(120), cancellation_identity),
        ("hypergeometric spot values", Duration::from_secs(1), hypergeometric_spot_values),
        ("regression stability", Duration::from_secs(120), regression_stability),
    ];
    let mut failed = 0;
    for (index, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if elapsed <= *budget => format!("PASS ({detail})"),
            Ok(detail) => format!("FAIL (over budget {budget:?}; {detail})"),
            Err(why) => format!("FAIL ({why})"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("criterion {:>2} {name}: {verdict} [{:.2}s]", index + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
