//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Run with `cargo test --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use capkit::codes::{lexicode, CodeTable};
use capkit::constructions::{
    alpha_estimate, behrend_shell, bound_theorem_const, classify_digit_aps, coding_system, equal_frequency_set,
    greedy_codes, mod11_k4, primepower_digits_a, primepower_digits_b, r4_system, salem_spencer_odd, shell_counts,
    theoretical_constants,
};
use capkit::reformulation::random_subspace_system;
use capkit::search::{max_apfree, SearchConfig};
use capkit::{find_witness, verify, GroupParams, SubsetSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, started: Instant, what: &str) -> Result<(), String> {
    let took = started.elapsed();
    ensure(took < limit, format!("{what} took {took:.2?}, limit {limit:?}"))
}

fn free(s: &capkit::PointSet, k: usize) -> bool {
    find_witness(s, k).unwrap().is_none()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c1_bound_table() -> Outcome {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_capkit"))
        .args(["bound", "--n-max", "10", "--table", "paper", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), started, "bound --n-max 10")?;
    ensure(out.status.success(), "bound exited nonzero")?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let rows = v["outputs"]["bounds"].as_array().ok_or("no bounds array")?;
    let totals: Vec<u64> = rows.iter().map(|r| r["total"].as_u64().unwrap()).collect();
    let want = [2, 6, 16, 42, 124, 344, 960, 2832, 7880, 22232];
    ensure(totals == want, format!("totals {totals:?}"))?;
    for (i, r) in rows.iter().enumerate().skip(1) {
        let n = i as i64 + 1;
        let t = r["t"].as_i64().unwrap();
        let expect = (2 * n - 5 + 2).div_euclid(3);
        ensure(t == expect, format!("n={n}: t={t}, expected {expect}"))?;
    }
    Ok(format!("totals {totals:?}, t = ceil((2n-5)/3) for n = 2..10"))
}

fn c2_coding_n5() -> Outcome {
    let started = Instant::now();
    let set = coding_system(5, 2, greedy_codes)
        .map_err(|e| e.to_string())?
        .materialize();
    ensure(set.len() == 124, format!("size {}", set.len()))?;
    ensure(free(&set, 3), "3-AP found")?;
    within(Duration::from_secs(5), started, "n=5 construction")?;
    Ok("124 points in Z_4^5, no 3-AP".into())
}

fn c3_coding_n8() -> Outcome {
    let started = Instant::now();
    let code = lexicode(8, 4).map_err(|e| e.to_string())?;
    ensure(code.len() == 16, format!("greedy (8,4) code has {} words", code.len()))?;
    let t = bound_theorem_const(8, &CodeTable::paper())
        .map_err(|e| e.to_string())?
        .t;
    let set = coding_system(8, t, greedy_codes)
        .map_err(|e| e.to_string())?
        .materialize();
    ensure(set.len() == 2832, format!("size {}", set.len()))?;
    let r = verify(&set, 3).map_err(|e| e.to_string())?;
    ensure(r.is_free(), "3-AP found")?;
    within(Duration::from_secs(120), started, "n=8 construction")?;
    Ok(format!("2832 points (t={t}), no 3-AP over {} pairs", r.pairs_scanned))
}

fn c4_r4_systems() -> Outcome {
    let started = Instant::now();
    let mut totals = Vec::new();
    for n in 1..=4 {
        let sys = r4_system(n).map_err(|e| e.to_string())?;
        ensure(sys.check_star_star().is_none(), format!("n={n} violates (**)"))?;
        let set = sys.materialize();
        ensure(free(&set, 4), format!("n={n} has a proper 4-AP"))?;
        totals.push(sys.total_size());
    }
    ensure(totals == [3, 10, 36, 128], format!("totals {totals:?}"))?;
    within(Duration::from_secs(60), started, "4-AP systems")?;
    Ok(format!("totals {totals:?}, (**) holds, no proper 4-AP"))
}

fn c5_exact_search() -> Outcome {
    let cfg = SearchConfig::default();
    let mut done = Vec::new();
    for (n, k, want, limit) in [
        (1, 3, 2, 1),
        (2, 3, 6, 1),
        (1, 4, 3, 10),
        (2, 4, 10, 10),
        (3, 3, 16, 600),
    ] {
        let started = Instant::now();
        let r = max_apfree(&GroupParams::new(4, n).unwrap(), k, &cfg).map_err(|e| e.to_string())?;
        ensure(r.optimal, format!("r_{k}(Z_4^{n}) not certified within budget"))?;
        ensure(r.size == want, format!("r_{k}(Z_4^{n}) = {}, expected {want}", r.size))?;
        ensure(free(&r.best, k), "search returned a set with a progression")?;
        within(Duration::from_secs(limit), started, &format!("r_{k}(Z_4^{n})"))?;
        done.push(format!("r_{k}(Z_4^{n})={want} in {:.2?}", r.elapsed));
    }
    Ok(done.join(", "))
}

fn c6_frequency() -> Outcome {
    let s = salem_spencer_odd(5, 6).map_err(|e| e.to_string())?;
    ensure(s.len() == 90 && free(&s, 3), format!("salem(5,6): {} points", s.len()))?;

    let started = Instant::now();
    let s = mod11_k4(7).map_err(|e| e.to_string())?;
    ensure(s.len() == 5040, format!("mod11(7): {} points", s.len()))?;
    ensure(free(&s, 4), "mod11(7) has a proper 4-AP")?;
    within(Duration::from_secs(120), started, "mod11 check")?;

    let started = Instant::now();
    let d = primepower_digits_a(2, 3).map_err(|e| e.to_string())?;
    let s = equal_frequency_set(&d, 7).map_err(|e| e.to_string())?;
    ensure(
        s.len() == 5040 && s.params().m() == 8,
        format!("Z_8^7 set: {} points", s.len()),
    )?;
    ensure(free(&s, 5), "Z_8^7 set has a proper 5-AP")?;
    within(Duration::from_secs(180), started, "Z_8^7 check")?;
    Ok("90 / 5040 / 5040 points, all free at k = 3 / 4 / 5".into())
}

fn c7_behrend() -> Outcome {
    let (set, spec) = behrend_shell(4, 8, None).map_err(|e| e.to_string())?;
    // oracle: for m = 4 the shell is fixed by the number of 1 digits
    let oracle = (0..=8).map(|j| binom(8, j) << (8 - j)).max().unwrap();
    ensure(set.len() as u64 == oracle, format!("size {} vs {oracle}", set.len()))?;
    let dp = shell_counts(4, 8).map_err(|e| e.to_string())?;
    ensure(dp[&spec.r_prime] == 1792 && spec.count == 1792, "DP count mismatch")?;
    ensure(free(&set, 3), "3-AP found")?;
    let c = theoretical_constants(4).map_err(|e| e.to_string())?;
    ensure((c.sigma_m - 2f64.sqrt() / 3.0).abs() < 1e-12, "sigma_4")?;
    let floor = c.shell_floor(8);
    ensure(set.len() as f64 > floor, format!("{} <= floor {floor:.1}", set.len()))?;
    Ok(format!("1792 points at R'={}, floor {floor:.1}", spec.r_prime))
}

fn c8_digits() -> Outcome {
    let mut done = Vec::new();
    let cases = [
        ('A', 2, 2, 3),
        ('A', 2, 3, 5),
        ('A', 3, 3, 10),
        ('A', 5, 3, 26),
        ('B', 3, 3, 4),
        ('B', 5, 3, 6),
    ];
    for (fam, p, s, k) in cases {
        let started = Instant::now();
        let d = if fam == 'A' {
            primepower_digits_a(p, s)
        } else {
            primepower_digits_b(p, s)
        }
        .map_err(|e| e.to_string())?;
        let r = classify_digit_aps(&d, k).map_err(|e| e.to_string())?;
        ensure(
            r.violations.is_empty(),
            format!(
                "{fam}({p},{s}) k={k}: {} violations, first {:?}",
                r.violations.len(),
                r.violations.first()
            ),
        )?;
        within(Duration::from_secs(10), started, &format!("{fam}({p},{s})"))?;
        done.push(format!("{fam}({p},{s},{k}):{}", r.progressions));
    }
    Ok(format!("zero violations; progressions checked {}", done.join(" ")))
}

fn system_from_choices(n: u32, choice: impl Fn(usize) -> u32) -> SubsetSystem {
    let mut sys = SubsetSystem::empty(n).unwrap();
    for x in 0..1usize << n {
        let mask = choice(x);
        let members: Vec<u32> = (0..1u32 << n).filter(|q| mask >> q & 1 == 1).collect();
        sys.set_part(x as u32, &members).unwrap();
    }
    sys
}

fn equivalence_counterexamples(sys: &SubsetSystem, tally: &mut [usize; 4]) -> Option<String> {
    let set = sys.materialize();
    let star = sys.check_star().is_none();
    let free3 = free(&set, 3);
    let star_star = sys.check_star_star().is_none();
    let free4 = free(&set, 4);
    tally[0] += star as usize;
    tally[1] += !star as usize;
    tally[2] += star_star as usize;
    tally[3] += !star_star as usize;
    if star != free3 {
        return Some(format!("(*)={star} but 3-AP-free={free3}: {}", sys.to_capsys()));
    }
    if star_star != free4 {
        return Some(format!("(**)={star_star} but 4-AP-free={free4}: {}", sys.to_capsys()));
    }
    None
}

fn c9_reformulation() -> Outcome {
    let mut tally = [0usize; 4];
    let mut checked = 0;
    for n in 1..=2u32 {
        let parts = 1usize << n;
        let per_part = 1u64 << (1 << n);
        for code in 0..per_part.pow(parts as u32) {
            let sys = system_from_choices(n, |x| ((code / per_part.pow(x as u32)) % per_part) as u32);
            if let Some(bad) = equivalence_counterexamples(&sys, &mut tally) {
                return Err(bad);
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..600 {
        // mix sparse and dense systems so both verdicts occur
        let density: f64 = rng.gen_range(0.02..0.35);
        let masks: Vec<u32> = (0..8)
            .map(|_| (0..8).fold(0u32, |m, q| if rng.gen_bool(density) { m | 1 << q } else { m }))
            .collect();
        let sys = system_from_choices(3, |x| masks[x]);
        if let Some(bad) = equivalence_counterexamples(&sys, &mut tally) {
            return Err(bad);
        }
        checked += 1;
    }
    ensure(tally.iter().all(|&c| c > 0), format!("one-sided sample {tally:?}"))?;
    Ok(format!(
        "{checked} systems, 0 counterexamples ((*) holds/fails {}/{}, (**) {}/{})",
        tally[0], tally[1], tally[2], tally[3]
    ))
}

fn c10_subspace_systems() -> Outcome {
    let mut worst = Vec::new();
    for n in 2..=4u32 {
        let cap = 3usize.pow(n);
        let mut max = 0;
        for seed in 0..1000 {
            let sys = random_subspace_system(n, seed).map_err(|e| e.to_string())?;
            let total = sys.total_size();
            ensure(total <= cap, format!("n={n} seed={seed}: total {total} > {cap}"))?;
            max = max.max(total);
        }
        worst.push(format!("n={n} max {max}/{cap}"));
    }
    Ok(format!("3000 draws, zero violations ({})", worst.join(", ")))
}

fn c11_alpha() -> Outcome {
    let a5 = alpha_estimate(124, 5);
    let a10 = alpha_estimate(22232, 10);
    ensure((a5 - 2.622).abs() < 1e-3, format!("124^(1/5) = {a5}"))?;
    ensure((a10 - 2.720).abs() < 1e-3, format!("22232^(1/10) = {a10}"))?;
    Ok(format!("124^(1/5) = {a5:.4}, 22232^(1/10) = {a10:.4}"))
}

fn main() {
    let criteria: &[Criterion] = &[
        ("bound table for n = 1..10", c1_bound_table),
        ("coding construction n = 5", c2_coding_n5),
        ("coding construction n = 8", c3_coding_n8),
        ("4-AP subset systems n = 1..4", c4_r4_systems),
        ("exact search values", c5_exact_search),
        ("equal-frequency constructions", c6_frequency),
        ("Behrend shell m = 4, n = 8", c7_behrend),
        ("digit-level classification", c8_digits),
        ("subset-system equivalence", c9_reformulation),
        ("subspace systems stay below 3^n", c10_subspace_systems),
        ("growth-rate spot checks", c11_alpha),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
