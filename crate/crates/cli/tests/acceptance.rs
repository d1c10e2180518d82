use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use bimono::clt::{clt_limit, convergence_report, fock_pattern_moment, Backend, CovarianceSpec};
use bimono::fock::{
    additivity_check, adjointness_check, independence_check, moment, stationarity_check, Grid,
    IntervalOp, OpKind,
};
use bimono::numbers::{factorial, odd_double_factorial, rational, rational_from_int, Rational};
use bimono::partitions::{
    count_bimonotone_pp, is_bi_monotone, is_bi_noncrossing, Face, OrderedSetPartition,
    OrderedTwoFacedPartition, Pattern, SetPartition, TwoFacedPartition,
};
use bimono::products::{
    associativity_check, factorization_check, marginal_restoration_check, samples, ProductRep,
};
use bimono::spectrum::quadrature;
use num_bigint::{BigInt, BigUint};

const TABLE: [u64; 7] = [1, 4, 48, 928, 24448, 811776, 32460032];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn to_rational(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn count_via_cli() -> Outcome {
    let mut notes = Vec::new();
    for (k, &expected) in TABLE.iter().enumerate().take(6) {
        let limit = if k == 5 {
            Duration::from_secs(600)
        } else {
            Duration::from_secs(60)
        };
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_bimono"))
            .args(["count", "--n", &k.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if !out.status.success() {
            return Err(format!("k = {k}: {}", String::from_utf8_lossy(&out.stderr)));
        }
        let v: serde_json::Value =
            serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        if v["total"].as_str() != Some(expected.to_string().as_str()) {
            return Err(format!("k = {k}: got {}, expected {expected}", v["total"]));
        }
        if elapsed > limit {
            return Err(format!("k = {k} took {elapsed:?}"));
        }
        notes.push(format!("{k}:{}ms", elapsed.as_millis()));
    }
    Ok(notes.join(" "))
}

fn count_via_operators() -> Outcome {
    let grid = Arc::new(Grid::unit(1));
    let mut stretch = String::new();
    for (n, &expected) in TABLE.iter().enumerate() {
        let start = Instant::now();
        let word = vec![IntervalOp::new(OpKind::Field, 1, 1); 2 * n];
        let value =
            moment(&grid, &word).map_err(|e| e.to_string())? * to_rational(factorial(n as u64));
        if value != rational_from_int(expected as i64) {
            return Err(format!("n = {n}: got {value}, expected {expected}"));
        }
        if n == 6 {
            stretch = format!("n = 6 stretch in {}ms", start.elapsed().as_millis());
        }
    }
    Ok(format!("n = 0..5 exact, {stretch}"))
}

fn per_pattern_moments() -> Outcome {
    let mut checked = 0;
    for m in 0..=8 {
        for p in Pattern::all(m) {
            let expected = if m % 2 == 0 {
                to_rational(count_bimonotone_pp(&p)) / to_rational(factorial((m / 2) as u64))
            } else {
                rational_from_int(0)
            };
            if fock_pattern_moment(&p).map_err(|e| e.to_string())? != expected {
                return Err(format!("pattern {p}"));
            }
            if m == 8 {
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} patterns of length 8 and all shorter ones"
    ))
}

fn monotone_specialization() -> Outcome {
    for n in 0..=5usize {
        for face in Face::BOTH {
            let c = count_bimonotone_pp(&Pattern::constant(face, 2 * n));
            if c != odd_double_factorial(n as u64) {
                return Err(format!("constant {face:?} n = {n}: {c}"));
            }
        }
    }
    for n in 0..=4usize {
        let bound = odd_double_factorial(n as u64);
        if let Some(p) = Pattern::all(2 * n).find(|p| count_bimonotone_pp(p) > bound) {
            return Err(format!("bound fails for {p}"));
        }
    }
    Ok("constants n <= 5, bound n <= 4".into())
}

fn nested_block_example() -> Outcome {
    let pattern: Pattern = "rrrlll".parse().unwrap();
    let blocks = vec![vec![1, 4], vec![2, 3], vec![5, 6]];
    let unordered = TwoFacedPartition::new(
        SetPartition::new(blocks.clone()).map_err(|e| e.to_string())?,
        pattern.clone(),
    )
    .map_err(|e| e.to_string())?;
    if !is_bi_noncrossing(&unordered) {
        return Err("not bi-noncrossing".into());
    }
    let mut valid = 0;
    for order in [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ] {
        let ordered = OrderedSetPartition::from_ordered_blocks(
            order.iter().map(|&i| blocks[i].clone()).collect(),
        )
        .map_err(|e| e.to_string())?;
        let p =
            OrderedTwoFacedPartition::new(ordered, pattern.clone()).map_err(|e| e.to_string())?;
        if is_bi_monotone(&p) {
            valid += 1;
        }
    }
    if valid == 3 {
        Ok("3 orderings".into())
    } else {
        Err(format!("{valid} orderings"))
    }
}

fn product_laws() -> Outcome {
    let err = |e: bimono::products::ProductError| e.to_string();
    let prod = ProductRep::new(vec![samples::qubit(), samples::skewed(), samples::qutrit()]);
    if !marginal_restoration_check(&prod, 5).map_err(err)? {
        return Err("marginal restoration".into());
    }
    if !associativity_check(
        &[samples::qubit(), samples::skewed(), samples::qubit_b()],
        4,
    )
    .map_err(err)?
        || !associativity_check(
            &[samples::qubit(), samples::qutrit(), samples::qubit_b()],
            4,
        )
        .map_err(err)?
    {
        return Err("associativity".into());
    }
    let report = factorization_check(
        &[samples::qubit(), samples::qutrit(), samples::qubit_b()],
        3,
        6,
    )
    .map_err(err)?;
    if !report.passed() {
        return Err(format!("factorization: {:?}", report.failures.first()));
    }
    Ok(format!(
        "{} vanishing and {} factorization cases",
        report.vanishing_cases, report.factorization_cases
    ))
}

fn levy_laws() -> Outcome {
    let err = |e: bimono::fock::FockError| e.to_string();
    let grid = Arc::new(
        Grid::new(vec![
            rational_from_int(0),
            rational(1, 2),
            rational_from_int(1),
            rational_from_int(2),
        ])
        .map_err(err)?,
    );
    if !additivity_check(&grid, 3).map_err(err)? {
        return Err("additivity".into());
    }
    let offsets = [rational(1, 3), rational_from_int(2), rational(-5, 7)];
    if !stationarity_check(&rational_from_int(1), &offsets, 6, 6).map_err(err)? {
        return Err("stationarity".into());
    }
    let half = Arc::new(
        Grid::new(vec![
            rational_from_int(0),
            rational(1, 2),
            rational_from_int(1),
        ])
        .map_err(err)?,
    );
    for (a, b) in [(1, 1), (2, 2), (1, 2)] {
        if !adjointness_check(&half, a, b, 5).map_err(err)? {
            return Err(format!("adjointness on intervals {a}..{b}"));
        }
    }
    Ok("additivity, stationarity at 3 offsets, adjointness <= 5".into())
}

fn independence() -> Outcome {
    let report = independence_check(6, 4).map_err(|e| e.to_string())?;
    if report.passed() {
        Ok(format!("{} words", report.words))
    } else {
        Err(format!(
            "{} failures, first {:?}",
            report.failures.len(),
            report.failures.first()
        ))
    }
}

fn clt_convergence() -> Outcome {
    let start = Instant::now();
    let ones = CovarianceSpec::ones();
    let mut worst: f64 = 0.0;
    for p in Pattern::all(4) {
        let report = convergence_report(&p, &[8, 16, 32], &ones, Backend::Exact)
            .map_err(|e| e.to_string())?;
        let e = report.errors();
        if e[2] >= 0.05 {
            return Err(format!("{p}: error {} at N = 32", e[2]));
        }
        if !(e[1] < e[0] && e[2] < e[1]) && e.iter().any(|&x| x != 0.0) {
            return Err(format!("{p}: errors {e:?} not decreasing"));
        }
        if report.limit != clt_limit(&p, &ones) {
            return Err(format!("{p}: limit"));
        }
        worst = worst.max(e[2]);
    }
    for p in Pattern::all(2) {
        let report = convergence_report(&p, &[1, 2, 3, 4, 8, 16, 32], &ones, Backend::Exact)
            .map_err(|e| e.to_string())?;
        if report.errors().iter().any(|&x| x != 0.0) {
            return Err(format!("{p}: second moment not exact"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        return Err(format!("scan took {elapsed:?}"));
    }
    Ok(format!(
        "worst error at N = 32 is {worst:.4}, {}ms",
        elapsed.as_millis()
    ))
}

fn spectrum() -> Outcome {
    let grid = Arc::new(Grid::unit(1));
    let mut worst: f64 = 0.0;
    for kind in [OpKind::LeftField, OpKind::RightField, OpKind::Field] {
        let moments: Vec<Rational> = (0..=11)
            .map(|k| moment(&grid, &vec![IntervalOp::new(kind, 1, 1); k]))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let q = quadrature(&moments, 6).map_err(|e| e.to_string())?;
        worst = worst.max(q.max_relative_error(&moments[..=10]));
    }
    if worst < 1e-9 {
        Ok(format!("max relative error {worst:.1e}"))
    } else {
        Err(format!("max relative error {worst:e}"))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("count table, enumeration route", count_via_cli),
        ("count table, operator route", count_via_operators),
        ("per-pattern moments", per_pattern_moments),
        ("monotone specialization", monotone_specialization),
        ("nested block example", nested_block_example),
        ("product-model laws", product_laws),
        ("Fock-model Levy laws", levy_laws),
        ("independence cross-check", independence),
        ("CLT convergence", clt_convergence),
        ("spectral self-consistency", spectrum),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  {:>2}  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
