//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use nilcone::checks::{
    check_alpha_partition, check_birational, check_distinguished_lemma, check_kernel_recursion, check_polynomial_count,
    check_roundtrip, check_semismall, check_split_product, closure_pairs, run_suite, CheckContext, CheckKind, CheckReport,
    Verdict,
};
use nilcone::combinatorics::{bipartitions, is_distinguished, Bipartition, FlagShape};
use nilcone::fiber::{fiber_polynomial, FiberQuery};
use nilcone::gf::{enumerate_subspaces, gaussian_binomial, PrimeField, Subspace};
use nilcone::normal_form::{explicit_decomposition, normal_pair};
use nilcone::{FiberCounter, QPolynomial};

type Outcome = Result<String, String>;

fn bp(mu: &[usize], nu: &[usize]) -> Bipartition {
    Bipartition::from_parts(mu, nu)
}

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn require(report: &CheckReport) -> Result<(), String> {
    if report.verdict == Verdict::Pass {
        Ok(())
    } else {
        Err(format!("{} {} -> {} {}", report.check, report.inputs, report.verdict, report.witness))
    }
}

fn paving_certificate(ctx: &CheckContext) -> Outcome {
    let mut checked = 0;
    for n in 0..=4 {
        for (big, small) in closure_pairs(ctx, n).map_err(|e| e.to_string())? {
            let r = check_polynomial_count(ctx, &big, &small).map_err(|e| e.to_string())?;
            require(&r)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} closure pairs certified"))
}

fn birationality(ctx: &CheckContext) -> Outcome {
    let mut checked = 0;
    for n in 0..=4 {
        for b in bipartitions(n) {
            for p in [2, 3] {
                require(&check_birational(ctx, &b, p).map_err(|e| e.to_string())?)?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} fibers equal to a point"))
}

fn springer_benchmarks(ctx: &CheckContext) -> Outcome {
    let cases: [(Bipartition, Bipartition, &[(u32, u64)], &[i64]); 3] = [
        (bp(&[], &[2]), bp(&[], &[1, 1]), &[(2, 3)], &[1, 1]),
        (bp(&[], &[3]), bp(&[], &[1, 1, 1]), &[(2, 21), (3, 52)], &[1, 2, 2, 1]),
        (bp(&[], &[3]), bp(&[], &[2, 1]), &[(2, 5), (3, 7)], &[1, 2]),
    ];
    for (big, small, counts, coeffs) in cases {
        for &(p, expected) in counts {
            let got = ctx.counter.count_over_orbit(&big, &small, p).map_err(|e| e.to_string())?;
            if got != expected {
                return Err(format!("{big} over {small} at p={p}: {got} != {expected}"));
            }
        }
        let fp = fiber_polynomial(&ctx.counter, &big, &small, &ctx.schedule).map_err(|e| e.to_string())?;
        let want = QPolynomial::new(coeffs.to_vec());
        if fp.polynomial.as_ref().ok() != Some(&want) || !fp.is_certificate() {
            return Err(format!("{big} over {small}: {:?} != {want}", fp.polynomial));
        }
    }
    Ok("q+1, q^3+2q^2+2q+1, 2q+1".to_string())
}

fn distinguished_lemma(ctx: &CheckContext) -> Outcome {
    let mut searched = 0;
    for n in 0..=4 {
        for b in bipartitions(n) {
            require(&check_distinguished_lemma(ctx, &b, 2).map_err(|e| e.to_string())?)?;
            searched += 1;
        }
    }
    let mut constructed = 0;
    for n in 0..=6 {
        for b in bipartitions(n).into_iter().filter(|b| !is_distinguished(b)) {
            let np = normal_pair(&b, gf(2));
            let (d, _) = explicit_decomposition(&np).map_err(|e| e.to_string())?;
            let bad = d.violations(&np.pair).map_err(|e| e.to_string())?;
            if !bad.is_empty() {
                return Err(format!("{b}: {bad:?}"));
            }
            constructed += 1;
        }
    }
    Ok(format!("{searched} brute-force searches, {constructed} explicit splittings"))
}

fn classification_roundtrip() -> Outcome {
    let mut checked = 0;
    for n in 0..=6 {
        for b in bipartitions(n) {
            for p in [2, 3] {
                require(&check_roundtrip(&b, p).map_err(|e| e.to_string())?)?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} normal pairs reclassified"))
}

fn semismallness(ctx: &CheckContext) -> Outcome {
    let mut checked = 0;
    for n in 0..=4 {
        for big in bipartitions(n) {
            require(&check_semismall(ctx, &big).map_err(|e| e.to_string())?)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} resolutions semismall"))
}

fn structure_recursions(ctx: &CheckContext) -> Outcome {
    let (mut alpha, mut split, mut kernel) = (0, 0, 0);
    let mut primes_seen = std::collections::BTreeSet::new();
    for n in 0..=3 {
        let pairs = closure_pairs(ctx, n).map_err(|e| e.to_string())?;
        for (big, small) in &pairs {
            let r = check_alpha_partition(ctx, big, small).map_err(|e| e.to_string())?;
            require(&r)?;
            if let Some(sums) = r.witness["sums"].as_object() {
                primes_seen.extend(sums.keys().cloned());
            }
            alpha += 1;
            if !is_distinguished(small) {
                for p in [2, 3] {
                    require(&check_split_product(small, big, p).map_err(|e| e.to_string())?)?;
                    split += 1;
                }
            }
        }
        for b in bipartitions(n).into_iter().filter(|b| is_distinguished(b) && !b.mu.is_empty()) {
            for shape in FlagShape::all(n) {
                for p in [2, 3] {
                    require(&check_kernel_recursion(&b, &shape, p).map_err(|e| e.to_string())?)?;
                    kernel += 1;
                }
            }
        }
    }
    for p in ["2", "3", "5"] {
        if !primes_seen.contains(p) {
            return Err(format!("alpha partition never sampled p={p}"));
        }
    }
    Ok(format!("{alpha} alpha partitions, {split} split products, {kernel} kernel recursions"))
}

fn strip_timing(mut reports: Vec<CheckReport>) -> Vec<CheckReport> {
    for r in &mut reports {
        r.millis = 0;
    }
    reports
}

fn determinism() -> Outcome {
    let mut sizes = 0;
    for p in [2u64, 3] {
        let field = gf(p as u32);
        for m in 0..=5 {
            let ambient = Subspace::full(field, m);
            for d in 0..=m {
                let expected = gaussian_binomial(m, d, p).map_err(|e| e.to_string())?;
                let got = enumerate_subspaces(&ambient, d).count() as u128;
                if got != expected {
                    return Err(format!("Gr({d},{m}) over GF({p}): {got} != {expected}"));
                }
                sizes += 1;
            }
        }
    }
    let selection = [CheckKind::Polynomial, CheckKind::AlphaPartition, CheckKind::SplitProduct, CheckKind::EulerBridge];
    let mut runs = Vec::new();
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        let reports = pool.install(|| run_suite(&CheckContext::default(), 3, &selection)).map_err(|e| e.to_string())?;
        let counts = pool.install(|| -> nilcone::Result<BTreeMap<String, u64>> {
            let counter = FiberCounter::new();
            let mut out = BTreeMap::new();
            for b in bipartitions(4) {
                let np = normal_pair(&b, gf(3));
                out.insert(b.to_string(), counter.count(&FiberQuery::normal(&np, FlagShape::full(4, 0)?)?)?);
            }
            Ok(out)
        });
        runs.push((strip_timing(reports), counts.map_err(|e| e.to_string())?));
    }
    if runs[0] != runs[1] {
        return Err("reports differ between 1 and 4 threads".to_string());
    }
    Ok(format!("{sizes} Grassmannian sizes, {} reports identical across thread counts", runs[0].0.len()))
}

fn main() -> ExitCode {
    let ctx = CheckContext::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("paving certificate", Box::new(|| paving_certificate(&ctx))),
        ("birationality", Box::new(|| birationality(&ctx))),
        ("springer benchmarks", Box::new(|| springer_benchmarks(&ctx))),
        ("distinguished lemma", Box::new(|| distinguished_lemma(&ctx))),
        ("classification roundtrip", Box::new(classification_roundtrip)),
        ("semismallness", Box::new(|| semismallness(&ctx))),
        ("structure recursions", Box::new(|| structure_recursions(&ctx))),
        ("determinism and enumeration", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
