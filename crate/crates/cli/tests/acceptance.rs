//! One PASS/FAIL line per acceptance criterion. Runs as a plain binary so the
//! lines reach the terminal; exits non-zero if any criterion fails.

use std::collections::HashMap;
use std::process::Command;
use std::time::Instant;

use kdeck::analysis::{good_n_predicate, zero_probability_mc};
use kdeck::constructions::{
    cosine_pair, even_pair, float_deck, float_deck_distance, g_alpha, pqrd_pair, two_deck_pair,
};
use kdeck::cyclic::{divisors, gcd_class, subgroup};
use kdeck::deck::{decks_equal, set_deck};
use kdeck::extendable::{build_constraints, is_extendable, linearity_check};
use kdeck::spectrum::{float_dft, gap, set_zero_set, SpectrumContext};
use kdeck::CyclicSet;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_kdeck"))
        .args(["sweep", "--from", "1", "--to", "18"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let mut rows = text.lines();
    ensure(
        rows.next() == Some("n,determined,predicate,translation_classes,deck_classes,exception_subsets,seconds"),
        || "unexpected CSV header".into(),
    )?;
    let good = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15, 17];
    let mut seen = 0;
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        let n: usize = cells[0].parse().map_err(|_| format!("bad row {row}"))?;
        let determined = cells[1] == "true";
        ensure(determined == good.contains(&n), || format!("n = {n}: determined = {determined}"))?;
        ensure(determined == good_n_predicate(n as u64), || format!("n = {n}: closed form disagrees"))?;
        seen += 1;
    }
    ensure(seen == 18 && out.status.success(), || format!("{seen} rows, status {}", out.status))?;
    Ok("determined exactly for n in {1..11, 13, 15, 17}".into())
}

fn criterion_2() -> Outcome {
    for k in 6..=64 {
        let pair = even_pair(k).map_err(|e| e.to_string())?;
        let equal = decks_equal(&set_deck(&pair.e, 3).unwrap(), &set_deck(&pair.f, 3).unwrap()).unwrap();
        let translate = pair.e.translation_equivalent(&pair.f).unwrap();
        ensure(equal && translate.is_none(), || format!("k = {k}: equal {equal}, translate {translate:?}"))?;
    }
    Ok("k = 6..=64: equal 3-decks, never translates".into())
}

fn criterion_3() -> Outcome {
    for (p, q, r, d) in [(2, 3, 2, 2), (2, 5, 2, 2), (3, 5, 2, 2), (3, 5, 3, 3)] {
        let pair = pqrd_pair(p, q, r, d).map_err(|e| e.to_string())?;
        let equal = decks_equal(&set_deck(&pair.e, 3).unwrap(), &set_deck(&pair.f, 3).unwrap()).unwrap();
        let translate = pair.e.translation_equivalent(&pair.f).unwrap();
        ensure(equal && translate.is_none(), || format!("({p},{q},{r},{d}): equal {equal}, translate {translate:?}"))?;
        ensure(pair.n == p * q * r * d, || format!("n = {}", pair.n))?;
    }
    ensure(!good_n_predicate(135), || "135 predicted good".into())?;
    Ok("n = 24, 40, 60, 135 collide; 135 is odd and bad".into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut zeros = 0usize;
    for n in [12usize, 36, 100] {
        let mut ctx = SpectrumContext::new(n);
        let threshold = n as f64 * 1e-6;
        for _ in 0..1000 {
            let values: Vec<i64> = (0..n).map(|_| i64::from(rng.gen_bool(0.5))).collect();
            let floats: Vec<f64> = values.iter().map(|&v| v as f64).collect();
            let dft = float_dft(&floats);
            let exact: Vec<bool> = (0..n).map(|s| ctx.is_zero_i64(&values, s)).collect();
            for s in 0..n {
                let small = dft[s].norm() < threshold;
                ensure(small == exact[s], || format!("n = {n}, f = {values:?}, s = {s}: |F| = {}", dft[s].norm()))?;
                let a = gcd(s as u64, n as u64) as usize % n;
                ensure(exact[s] == exact[a], || format!("n = {n}, f = {values:?}: classes of {s} and {a} differ"))?;
            }
            zeros += exact.iter().filter(|&&z| z).count();
        }
    }
    Ok(format!("3000 random sets agree at every frequency ({zeros} exact zeros)"))
}

fn checked(a: &CyclicSet, memo: &mut HashMap<CyclicSet, bool>) -> Result<bool, String> {
    if let Some(&v) = memo.get(a) {
        return Ok(v);
    }
    let v = is_extendable(a).map_err(|e| e.to_string())?;
    if let Some(w) = &v.witness {
        let h = w.as_rationals();
        ensure(build_constraints(a).is_additive(&h), || format!("witness on {a} is not additive"))?;
        if a.iter().any(|k| k != 0) {
            ensure(linearity_check(a, &h).unwrap().is_none(), || format!("witness on {a} is linear"))?;
        }
    }
    memo.insert(a.clone(), v.extendable);
    Ok(v.extendable)
}

fn fill(base: &CyclicSet, free: &[usize], bits: u64) -> CyclicSet {
    let mut a = base.clone();
    for (i, &x) in free.iter().enumerate() {
        if bits >> i & 1 == 1 {
            a.insert(x);
        }
    }
    a
}

/// All fillings when there are at most `limit` free elements, else `samples` random ones.
fn fillings(base: &CyclicSet, free: &[usize], limit: usize, samples: usize, rng: &mut ChaCha8Rng) -> Vec<CyclicSet> {
    if free.len() <= limit {
        (0..1u64 << free.len()).map(|b| fill(base, free, b)).collect()
    } else {
        (0..samples).map(|_| fill(base, free, rng.gen())).collect()
    }
}

fn criterion_5() -> Outcome {
    let mut memo = HashMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();

    let mut supports = 0;
    for mask in 0u64..1 << 15 {
        let support = set_zero_set(&CyclicSet::from_mask(15, mask).unwrap()).full_support;
        // the zero function has empty support, where extendability holds vacuously
        if support.is_empty() {
            continue;
        }
        supports += 1;
        if !checked(&support, &mut memo)? {
            failures.push(format!("Z_15 support {support}"));
        }
    }

    let mut instances = 0;
    for n in (1..=45u64).step_by(2) {
        let ds = divisors(n);
        for &a in &ds {
            let class = gcd_class(n, a).unwrap();
            let free: Vec<usize> = subgroup(n, a).unwrap().iter().filter(|x| !class.contains(*x)).collect();
            for set in fillings(&class, &free, 14, 4096, &mut rng) {
                instances += 1;
                if !checked(&set, &mut memo)? {
                    failures.push(format!("class inside subgroup: {set}"));
                }
            }
            for &b in ds.iter().filter(|&&b| b > a && gcd(a, b) == 1) {
                let mut base = class.union(&gcd_class(n, b).unwrap());
                base.insert((a * b % n) as usize);
                base.insert(0);
                let top = subgroup(n, a).unwrap().union(&subgroup(n, b).unwrap());
                let free: Vec<usize> = top.iter().filter(|x| !base.contains(*x)).collect();
                for set in fillings(&base, &free, 10, 512, &mut rng) {
                    instances += 1;
                    if !checked(&set, &mut memo)? {
                        failures.push(format!("two coprime classes: {set}"));
                    }
                }
                for &c in ds.iter().filter(|&&c| c > b && gcd(c, a) == 1 && gcd(c, b) == 1 && n % (a * b * c) == 0) {
                    let set = subgroup(n, a).unwrap().union(&subgroup(n, b).unwrap()).union(&subgroup(n, c).unwrap());
                    instances += 1;
                    if !checked(&set, &mut memo)? {
                        failures.push(format!("three coprime subgroups: {set}"));
                    }
                }
            }
        }
    }

    // prefix {0..d} with every gap at most d, exactly as stated
    let mut prefix_cases = 0;
    let mut prefix_failures = Vec::new();
    for n in 2..=30usize {
        for d in 1..n {
            for _ in 0..40 {
                let density = rng.gen_range(0.3..1.0);
                let mut a = CyclicSet::from_elements(n, 0..=d as i64);
                for x in d + 1..n {
                    if rng.gen_bool(density) {
                        a.insert(x);
                    }
                }
                if gap(&a) <= d {
                    prefix_cases += 1;
                    if !checked(&a, &mut memo)? {
                        prefix_failures.push(format!("d = {d}, A = {a}"));
                    }
                }
            }
        }
    }
    if !prefix_failures.is_empty() {
        let total = prefix_failures.len();
        prefix_failures.sort_by_key(|s| s.len());
        failures.push(format!(
            "prefix-and-gap instances not extendable: {total} of {prefix_cases}, e.g. {}",
            prefix_failures[0]
        ));
    }

    if failures.is_empty() {
        Ok(format!(
            "{supports} Z_15 supports, {instances} subgroup instances, {prefix_cases} prefix instances extendable"
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_6() -> Outcome {
    let a = CyclicSet::from_elements(12, [0, 1, 3, 5, 7, 9, 11]);
    let v = is_extendable(&a).map_err(|e| e.to_string())?;
    ensure(!v.extendable && v.slope_certificate.is_none(), || "reported extendable".into())?;
    let w = v.witness.ok_or("no witness")?;
    let h = w.as_rationals();
    ensure(build_constraints(&a).is_additive(&h), || "witness not additive".into())?;
    ensure(linearity_check(&a, &h).unwrap().is_none(), || "witness is linear".into())?;
    let shown: Vec<String> = h.iter().map(|x| x.to_string()).collect();
    Ok(format!("witness h = [{}] is additive and not linear", shown.join(", ")))
}

fn criterion_7() -> Outcome {
    let r = zero_probability_mc(12, 100_000, 2024).map_err(|e| e.to_string())?;
    let exact = r.exact_half_probability.clone().ok_or("no exact value")?;
    ensure(exact == BigRational::new(924.into(), 4096.into()), || format!("exact value {exact}"))?;
    let p = exact.to_f64().unwrap();
    let est = r.estimates[6];
    let z = (est.rate - p) / est.std_error;
    ensure(z.abs() <= 3.0, || format!("rate {} is {z:.2} standard errors from {p}", est.rate))?;

    let r13 = zero_probability_mc(13, 100_000, 2024).map_err(|e| e.to_string())?;
    // the empty set and all of Z_13 vanish at some frequency; every other set must not
    ensure(r13.nontrivial_any_zero_count == 0, || format!("{} nontrivial sets with zeros", r13.nontrivial_any_zero_count))?;
    ensure(r13.any_zero_count == r13.trivial_count, || "zeros outside the trivial sets".into())?;
    Ok(format!(
        "n = 12 rate {:.5} ({z:+.2} se from {p:.5}); n = 13 zeros only on the {} empty/full samples",
        est.rate, r13.trivial_count
    ))
}

fn criterion_8() -> Outcome {
    for n in [4usize, 5, 12] {
        let (f, g) = cosine_pair::<f64>(n).map_err(|e| e.to_string())?;
        let dist = float_deck_distance(&float_deck(&f, 3).unwrap(), &float_deck(&g, 3).unwrap()).unwrap();
        let tol = 1e-9 * (n as f64).powi(3);
        ensure(dist <= tol, || format!("cosine n = {n}: distance {dist:e}"))?;
    }
    let g = g_alpha(12, 0.3f64).map_err(|e| e.to_string())?;
    let chi: Vec<f64> = (0..12).map(|j| if (1..=6).contains(&j) { 1.0 } else { 0.0 }).collect();
    let dist = float_deck_distance(&float_deck(&g, 3).unwrap(), &float_deck(&chi, 3).unwrap()).unwrap();
    ensure(dist <= 1e-6, || format!("g_alpha deck distance {dist:e}"))?;
    let nearest = (0..12)
        .map(|t| (0..12).map(|j| (g[j] - chi[(j + t) % 12]).abs()).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min);
    ensure(nearest > 1e-3, || format!("g_alpha is within {nearest:e} of a translate"))?;
    Ok(format!("cosine decks match; g_alpha deck within {dist:.1e}, {nearest:.3} from every translate"))
}

fn criterion_9() -> Outcome {
    let a = CyclicSet::from_elements(101, [0, 10, 20, 30]);
    let b = CyclicSet::from_elements(101, [0, 1, 3]);
    let pair = two_deck_pair(&a, &b).map_err(|e| e.to_string())?;
    let eq2 = decks_equal(&set_deck(&pair.e, 2).unwrap(), &set_deck(&pair.f, 2).unwrap()).unwrap();
    let eq3 = decks_equal(&set_deck(&pair.e, 3).unwrap(), &set_deck(&pair.f, 3).unwrap()).unwrap();
    let translate = pair.e.translation_equivalent(&pair.f).unwrap();
    ensure(eq2 && !eq3 && translate.is_none(), || format!("2-deck {eq2}, 3-deck {eq3}, translate {translate:?}"))?;
    Ok(format!("|E| = |F| = {}: equal 2-decks, different 3-decks, not translates", pair.e.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("determinacy sweep 1..18", criterion_1),
        ("even-2k family", criterion_2),
        ("pqrd family", criterion_3),
        ("exact spectral zeros", criterion_4),
        ("extendable positive suite", criterion_5),
        ("extendable negative witness", criterion_6),
        ("zero probabilities", criterion_7),
        ("real-valued demos", criterion_8),
        ("2-deck insufficiency", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
