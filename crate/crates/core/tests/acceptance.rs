//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{nef_oracle_rank2, random_gram, rank2_fixtures};
use k3bott::delpezzo::{decompose_ample, dp_is_ample, dp_is_nef, dual_graph, minus_one_curves, DelPezzoLattice};
use k3bott::k3::{
    bott_verdict, euler_char_omega_twist, rank_one_verdict, validate_fibration, FibrationData,
    FibrationViolation, KodairaType, RuleId, Status,
};
use k3bott::positivity::{is_nef, validate_polarization};
use k3bott::{
    brute_force_classes, enumerate_classes, provable_box_bound, DivisorClass, EnumerationQuery,
    IntegralLattice, PolarizedLattice,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn polarized(gram: Vec<Vec<i64>>, b: Vec<i64>) -> PolarizedLattice {
    PolarizedLattice::new(IntegralLattice::new(gram).unwrap(), DivisorClass::new(b)).unwrap()
}

fn fibers(e: Vec<i64>, list: &[(KodairaType, u32)]) -> [FibrationData; 1] {
    [FibrationData::new(DivisorClass::new(e), list)]
}

fn riemann_roch_table() -> Outcome {
    for d in (2..=38).step_by(2) {
        let chi = euler_char_omega_twist(d).unwrap();
        ensure!(chi == d - 20, "chi({d}) = {chi}");
        if d < 20 {
            let v = bott_verdict(&polarized(vec![vec![d]], vec![1]), None).unwrap();
            ensure!(v.status == Status::Fails, "degree {d}: {:?}", v.status);
            ensure!(v.cites(RuleId::RiemannRoch), "degree {d} cites {:?}", v.rules());
        }
    }
    Ok("chi = 2a - 20 for 2a in 2..=38; degrees 2..=18 fail".into())
}

fn rank_one_classification() -> Outcome {
    let status = |d, k| rank_one_verdict(d, k).unwrap().status;
    ensure!(status(20, 1) == Status::Vanishes, "degree 20");
    ensure!(status(22, 1) == Status::Fails, "degree 22");
    for d in (24..=40).step_by(2) {
        ensure!(status(d, 1) == Status::Vanishes, "degree {d}");
    }
    ensure!(status(2, 6) == Status::Fails, "(2, 6)");
    ensure!(status(2, 7) == Status::Vanishes, "(2, 7)");
    let v = rank_one_verdict(2, 7).unwrap();
    ensure!(v.reasons[0].rule == RuleId::NoLowDegreePencil, "(2, 7) cites {:?}", v.rules());
    Ok("20 V, 22 F, 24..=40 V, (2,6) F, (2,7) V".into())
}

fn degree_62_lattice() -> Outcome {
    let p = polarized(vec![vec![2, 5], vec![5, 10]], vec![1, 2]);
    ensure!(p.ample_square() == 62, "B^2 = {}", p.ample_square());
    let query = EnumerationQuery::new(0, 1, 1000, p.ample().clone()).unwrap();
    let iso = enumerate_classes(p.lattice(), &query).unwrap();
    ensure!(iso.is_empty(), "isotropic classes {iso:?}");
    let v = bott_verdict(&p, None).unwrap();
    ensure!(v.status == Status::Undetermined, "{:?}", v.status);
    ensure!(v.reasons[0].rule == RuleId::FanoWindow, "{:?}", v.rules());
    ensure!(v.reasons[0].window == Some([20, 72]), "{:?}", v.reasons[0].window);
    Ok("no isotropic classes up to degree 1000; Undetermined, Fano window [20, 72]".into())
}

fn unigonal_suite() -> Outcome {
    use KodairaType::*;
    let unigonal = |m| polarized(vec![vec![-2, 1], vec![1, 0]], vec![1, m]);
    let smooth = fibers(vec![0, 1], &[(I(1), 24)]);
    let cusp = fibers(vec![0, 1], &[(I(1), 22), (II, 1)]);
    let run = |m, data: &[FibrationData]| bott_verdict(&unigonal(m), Some(data)).unwrap();
    // B = (1, m) has B^2 = 2m - 2
    let v = run(20, &smooth);
    ensure!(v.status == Status::Fails, "B^2 = 38 smooth: {:?}", v.status);
    let v = run(21, &smooth);
    ensure!(v.status == Status::Vanishes, "B^2 = 40 smooth: {:?}", v.status);
    for b2 in [40, 100, 400] {
        let v = run(b2 / 2 + 1, &cusp);
        ensure!(v.status == Status::Fails, "B^2 = {b2} cusp: {:?}", v.status);
        ensure!(v.cites(RuleId::UnigonalCriterion), "B^2 = {b2}: {:?}", v.rules());
    }
    Ok("I1x24: F at 38, V at 40; I1x22+II: F at 40, 100, 400".into())
}

fn fibration_thresholds() -> Outcome {
    use KodairaType::*;
    let unigonal = polarized(vec![vec![-2, 1], vec![1, 0]], vec![1, 21]);
    let bad_sum = FibrationData::new(DivisorClass::new(vec![0, 1]), &[(I(1), 23)]);
    ensure!(
        validate_fibration(&unigonal, &bad_sum) == Err(vec![FibrationViolation::SingularLocusDegree { total: 23 }]),
        "sum 23 accepted"
    );
    let reducible = FibrationData::new(DivisorClass::new(vec![0, 1]), &[(I(2), 1), (I(1), 22)]);
    ensure!(
        validate_fibration(&unigonal, &reducible)
            == Err(vec![FibrationViolation::Inadmissible { fiber: I(2), degree: 1 }]),
        "I2 accepted for r = 1"
    );
    type Case<'a> = (i64, i64, &'a [(KodairaType, u32)]);
    let cases: [Case; 3] =
        [(2, 92, &[(I(2), 12)]), (3, 140, &[(I(3), 8)]), (4, 194, &[(I(4), 6)])];
    for (r, t, list) in cases {
        for b2 in [t, t - 2] {
            let p = polarized(vec![vec![0, r], vec![r, b2]], vec![0, 1]);
            let v = bott_verdict(&p, Some(&fibers(vec![1, 0], list))).unwrap();
            let expected = if b2 == t { Status::Vanishes } else { Status::Undetermined };
            ensure!(v.status == expected, "r = {r}, B^2 = {b2}: {:?}", v.status);
        }
    }
    Ok("sum 24 enforced, I2 rejected at r = 1, thresholds 92/140/194 exact".into())
}

fn del_pezzo() -> Outcome {
    let x = DelPezzoLattice::new(5).unwrap();
    let lines = minus_one_curves(&x);
    ensure!(lines.len() == 10, "{} lines", lines.len());
    let g = dual_graph(&x, &lines).unwrap();
    ensure!(g.vertex_count() == 10 && g.edge_count() == 15, "{} edges", g.edge_count());
    ensure!(g.regularity() == Some(3) && g.girth() == Some(5), "not Petersen");
    let k = x.anticanonical();
    for c in &lines {
        ensure!(x.pairing(&k, &c.class).unwrap() == 1, "-K . {c} != 1");
    }
    // nef generators: H, conic bundles H - E_i, and 2H - E_1 - ... - E_4
    let mut nef = vec![x.hyperplane()];
    for i in 0..4 {
        let mut e = [0; 4];
        e[i] = 1;
        nef.push(x.class(1, &e).unwrap());
    }
    nef.push(x.class(2, &[1, 1, 1, 1]).unwrap());
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..200 {
        let mut l = k.scaled(rng.gen_range(1..=4)).unwrap();
        for n in &nef {
            l = l.checked_add(&n.scaled(rng.gen_range(0..=3)).unwrap()).unwrap();
        }
        ensure!(dp_is_ample(&x, &l).unwrap(), "{l} not ample");
        let d = decompose_ample(&x, &l).unwrap();
        ensure!(d.a >= 1, "a = {}", d.a);
        ensure!(dp_is_nef(&x, &d.m).unwrap(), "M = {} not nef", d.m);
        ensure!(x.pairing(&d.m, &d.contracted.class).unwrap() == 0, "M . contracted != 0");
        ensure!(k.scaled(d.a).unwrap().checked_add(&d.m).unwrap() == l, "L != a(-K) + M");
    }
    Ok("10 lines, Petersen graph, -K.C = 1, 200 random decompositions".into())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let (mut cases, mut rejected) = (0, 0);
    while cases < 100 {
        let rank = if cases % 2 == 0 { 2 } else { 3 };
        let Ok(lattice) = IntegralLattice::new(random_gram(&mut rng, rank, 10, false)) else { continue };
        if !lattice.signature().is_hyperbolic() {
            continue;
        }
        let b = DivisorClass::new((0..rank).map(|_| rng.gen_range(-3..=3)).collect());
        if lattice.self_intersection(&b).unwrap() <= 0 {
            continue;
        }
        let square = [-2, 0, 2][rng.gen_range(0..3)];
        let lo = rng.gen_range(1..=6);
        let hi = rng.gen_range(lo..=6);
        let query = EnumerationQuery::new(square, lo, hi, b.clone()).unwrap();
        let bound = provable_box_bound(&lattice, &query).unwrap();
        // keep the brute-force box below ~10^6 points
        if (2 * bound + 1).pow(rank as u32) > 1_000_000 {
            rejected += 1;
            continue;
        }
        let fast = enumerate_classes(&lattice, &query).unwrap();
        let slow = brute_force_classes(&lattice, &query, bound).unwrap();
        ensure!(fast == slow, "{:?} B={b} square {square} [{lo},{hi}]: {fast:?} vs {slow:?}", lattice.gram());
        cases += 1;
    }
    Ok(format!("100 random lattices agree ({rejected} rejected for box size)"))
}

fn positivity_soundness() -> Outcome {
    let fixtures = rank2_fixtures(6);
    let mut checked = 0;
    for p in &fixtures {
        for x in -5..=5 {
            for y in -5..=5 {
                let d = DivisorClass::new(vec![x, y]);
                let fast = is_nef(p, &d).unwrap().is_nef();
                ensure!(fast == nef_oracle_rank2(p, &d, 1000), "{:?} B={} D={d}", p.lattice().gram(), p.ample());
                checked += 1;
            }
        }
    }
    let u = IntegralLattice::hyperbolic_plane();
    ensure!(validate_polarization(&u, &DivisorClass::new(vec![1, 1])).is_err(), "U, B=(1,1) accepted");
    let unigonal = IntegralLattice::new(vec![vec![-2, 1], vec![1, 0]]).unwrap();
    ensure!(
        validate_polarization(&unigonal, &DivisorClass::new(vec![1, 2])).is_err(),
        "unigonal m=2 accepted"
    );
    Ok(format!("{} fixtures, {checked} classes agree; both rejections hold", fixtures.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("riemann-roch table", riemann_roch_table),
        ("rank-one classification", rank_one_classification),
        ("degree-62 lattice", degree_62_lattice),
        ("unigonal thresholds", unigonal_suite),
        ("fibration validation and thresholds", fibration_thresholds),
        ("del pezzo lines and decompositions", del_pezzo),
        ("enumeration oracle equivalence", oracle_equivalence),
        ("positivity soundness", positivity_soundness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
