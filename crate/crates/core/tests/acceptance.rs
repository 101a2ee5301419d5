//! End-to-end acceptance checks. Runs without the libtest harness and
//! prints one PASS/FAIL line per criterion; exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use l2hodge::algebra::rational::{int, ratio};
use l2hodge::fixtures::{self, Expected};
use l2hodge::hodge::{arakelov_bound, check_sum, hodge_decomposed};
use l2hodge::table::{audit_all, load_table, AuditOptions, TableRow};
use l2hodge::weight_filtration::{
    twist_ledger_for, weight_filtration, weight_filtration_closed_form, ChainAlignment,
};
use l2hodge::{
    base_change, classify, hodge_from_ledger, hodge_weight3, resolve, DegenerationCounts, Error,
    FamilyDescriptor, HodgeInput, Kind, MarkedPoint, Matrix, RejectReason, Weight,
};
use rand::Rng;

fn table_path() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/cy_table.json").to_string()
}

fn rows_of(model: u32) -> Vec<TableRow> {
    load_table(table_path())
        .unwrap()
        .into_iter()
        .filter(|r| r.model_id == model)
        .collect()
}

fn row_with_e(model: u32, e: i64) -> TableRow {
    rows_of(model)
        .into_iter()
        .find(|r| r.e.is_constant() && r.e.constant == e)
        .unwrap_or_else(|| panic!("model {model} has no row e = {e}"))
}

fn counts_tuple(c: DegenerationCounts) -> (u32, u32, u32, u32) {
    (c.n_i, c.n_ii, c.n_iii, c.n_iv)
}

fn weight3(counts: DegenerationCounts, a: i64, b: i64) -> Vec<u64> {
    hodge_weight3(&HodgeInput::new(0, a, Some(b), counts, Weight::THREE))
        .unwrap()
        .values()
}

fn criterion_1() -> String {
    let start = Instant::now();
    let rows = load_table(table_path()).unwrap();
    let report = audit_all(&rows, AuditOptions::default());
    let elapsed = start.elapsed();
    let flagged: Vec<_> = report.flagged().collect();
    assert_eq!(flagged.len(), 1, "flagged rows: {flagged:?}");
    let f = flagged[0];
    assert_eq!((f.model_id, f.e), (1, 10));
    let a = &f.assignments[0];
    assert_eq!((a.sum.h1, a.sum.components), (1, 5));
    assert!(!a.sum.pass);
    assert!(elapsed < Duration::from_secs(1), "audit took {elapsed:?}");
    format!(
        "{} rows checked, only model 1 e=10 flagged (h1 1 vs 5), {elapsed:.2?}",
        report.summary.checked
    )
}

fn criterion_2() -> String {
    let quintic = fixtures::quintic();
    let expected = [
        (1, (1, 0, 1, 1)),
        (2, (2, 0, 1, 1)),
        (5, (5, 0, 1, 0)),
        (10, (10, 0, 1, 0)),
    ];
    for (e, want) in expected {
        let res = resolve(&base_change(&quintic, e).unwrap()).unwrap();
        assert_eq!(counts_tuple(res.counts), want, "e = {e}");
        assert_eq!(res.dropped.contains(&"inf".to_string()), e % 5 == 0);
        let row = row_with_e(1, e as i64);
        let v = row.assignment(0, 0);
        let h = weight3(res.counts, v.a, v.b);
        if e == 10 {
            assert_eq!((h[0], h[1], h[2]), (1, 1, 1));
            assert_eq!(h.iter().sum::<u64>(), 5);
        } else {
            assert_eq!(
                h,
                vec![
                    v.h40 as u64,
                    v.h31 as u64,
                    v.h22 as u64,
                    v.h31 as u64,
                    v.h40 as u64
                ]
            );
            assert_eq!(h.iter().sum::<u64>() as i64, row.h1.constant);
        }
    }
    "counts (1,0,1,1) (2,0,1,1) (5,0,1,0) (10,0,1,0); rows e=1,2,5 exact; e=10 gives (1,1,1) total 5".into()
}

fn criterion_3() -> String {
    let family = fixtures::two_cubics();
    let expected = [
        (1, (1, 0, 1, 1)),
        (2, (2, 0, 1, 1)),
        (3, (3, 1, 1, 0)),
        (6, (6, 1, 1, 0)),
    ];
    for (e, want) in expected {
        let changed = base_change(&family, e).unwrap();
        let res = resolve(&changed).unwrap();
        assert_eq!(counts_tuple(res.counts), want, "e = {e}");
        let inf = res.points.iter().find(|p| p.label == "inf").unwrap();
        assert_eq!(inf.kind, if e % 3 == 0 { Kind::II } else { Kind::IV });
        let row = row_with_e(4, e as i64);
        let v = row.assignment(0, 0);
        let h = weight3(res.counts, v.a, v.b);
        assert_eq!(
            h,
            vec![
                v.h40 as u64,
                v.h31 as u64,
                v.h22 as u64,
                v.h31 as u64,
                v.h40 as u64
            ]
        );
        assert_eq!(h.iter().sum::<u64>() as i64, row.h1.constant);
        let ledger = hodge_from_ledger(&changed.with_degrees(v.a, Some(v.b))).unwrap();
        assert_eq!(ledger.values(), h);
    }
    "rows e=1,2,3,6 reproduced; infinity IV -> II at e=3".into()
}

fn criterion_4() -> String {
    let h = hodge_decomposed(0, 0, -1, 2, 1, 3).unwrap();
    assert_eq!(h.values(), vec![0; 5]);
    assert!(matches!(
        hodge_decomposed(0, 1, -1, 2, 1, 3),
        Err(Error::InconsistentInput(_))
    ));
    let family = FamilyDescriptor::new(
        Weight::THREE,
        0,
        vec![
            MarkedPoint::declared("0", Kind::II),
            MarkedPoint::declared("1", Kind::II),
            MarkedPoint::declared("inf", Kind::IV),
        ],
    )
    .with_degrees(0, Some(-1))
    .decomposed();
    assert_eq!(hodge_from_ledger(&family).unwrap().values(), h.values());
    "decomposed formula and degree ledger both give all zeros".into()
}

fn criterion_5() -> String {
    // Twist tables of the L2 Higgs complexes, lines p = m..0, keyed by the
    // set of types that appear in each twist.
    let t0: [(u8, &[&[Kind]]); 3] = [
        (1, &[&[Kind::I], &[]]),
        (2, &[&[Kind::I], &[], &[]]),
        (
            3,
            &[
                &[Kind::II, Kind::III],
                &[Kind::I, Kind::III],
                &[Kind::II],
                &[],
            ],
        ),
    ];
    let t1: [(u8, &[&[Kind]]); 3] = [
        (1, &[&[Kind::II], &[Kind::II]]),
        (2, &[&[Kind::II], &[Kind::II], &[Kind::I, Kind::II]]),
        (
            3,
            &[
                &[Kind::IV],
                &[Kind::IV],
                &[Kind::IV],
                &[Kind::III, Kind::IV],
            ],
        ),
    ];
    let mut checked = 0;
    for ((m, zero), (_, one)) in t0.iter().zip(&t1) {
        let w = Weight::new(*m).unwrap();
        for &kind in w.allowed_kinds().iter().chain(&[Kind::Trivial]) {
            let l = twist_ledger_for(w, kind, ChainAlignment::Standard).unwrap();
            let want0: Vec<i64> = zero.iter().map(|s| -(s.contains(&kind) as i64)).collect();
            let want1: Vec<i64> = one.iter().map(|s| s.contains(&kind) as i64).collect();
            assert_eq!(l.twist0, want0, "weight {m}, type {kind}");
            assert_eq!(l.twist1, want1, "weight {m}, type {kind}");
            checked += 1;
        }
    }
    format!("{checked} (weight, type) ledgers match the printed complexes")
}

fn criterion_6() -> String {
    let mut rng = common::rng(6);
    let trials = 500;
    for i in 0..trials {
        let n = rng.gen_range(1..=6);
        let blocks = common::random_partition(&mut rng, n);
        let nil = common::conjugate(&mut rng, &common::nilpotent_from_blocks(&blocks));
        let w = weight_filtration(&nil).unwrap();
        w.verify(&nil)
            .unwrap_or_else(|e| panic!("trial {i}, blocks {blocks:?}: {e}"));
        assert_eq!(
            w.graded_dims(),
            common::graded_oracle(&blocks),
            "blocks {blocks:?}"
        );
        let m = w.m() as i64;
        for k in -m..=m {
            assert_eq!(w.level(k), weight_filtration_closed_form(&nil, k));
        }
    }
    format!("{trials} conjugated nilpotents: axioms hold, graded dims match Jordan oracle")
}

fn criterion_7() -> String {
    let mut rng = common::rng(7);
    let target = 1000;
    let (mut valid, mut genus0, mut attempts) = (0, 0, 0);
    while valid < target {
        attempts += 1;
        assert!(attempts < 1_000_000, "too few valid inputs");
        let g = rng.gen_range(0..=3);
        let c = DegenerationCounts::new(
            rng.gen_range(0..=10),
            rng.gen_range(0..=10),
            rng.gen_range(0..=10),
            rng.gen_range(0..=10),
        );
        let (a, b) = (rng.gen_range(-10..=10), rng.gen_range(-10..=10));
        let Ok(h) = hodge_weight3(&HodgeInput::new(g, a, Some(b), c, Weight::THREE)) else {
            continue;
        };
        valid += 1;
        let expected = 8 * i64::from(g) - 8
            + i64::from(c.n_i)
            + 2 * i64::from(c.n_ii)
            + 3 * i64::from(c.n_iii)
            + 4 * i64::from(c.n_iv);
        assert_eq!(h.total as i64, expected);
        assert_eq!(check_sum(Weight::THREE, g, &c), expected);
        assert!(h.is_self_dual());
        if g == 0 {
            genus0 += 1;
            let mut points = Vec::new();
            for kind in [Kind::I, Kind::II, Kind::III, Kind::IV] {
                for j in 0..c.get(kind) {
                    points.push(MarkedPoint::declared(format!("{kind}{j}"), kind));
                }
            }
            let family = FamilyDescriptor::new(Weight::THREE, 0, points).with_degrees(a, Some(b));
            assert_eq!(hodge_from_ledger(&family).unwrap().values(), h.values());
        }
    }
    format!(
        "{valid} valid inputs satisfy the check-sum; ledger agrees on all {genus0} genus-0 cases"
    )
}

fn criterion_8() -> String {
    let mut rng = common::rng(8);
    let forms = fixtures::normal_forms();
    let per_form = 50;
    for f in &forms {
        let reference = classify(&f.matrix, f.weight).ok();
        for _ in 0..per_form {
            let t = common::conjugate(&mut rng, &f.matrix);
            let got = match classify(&t, f.weight) {
                Ok(c) => {
                    let r = reference.as_ref().unwrap();
                    assert_eq!(
                        (c.semisimple_order, &c.jordan),
                        (r.semisimple_order, &r.jordan)
                    );
                    Expected::Kind(c.kind)
                }
                Err(Error::Classification(e)) => Expected::Rejected(e.reason),
                Err(e) => panic!("{}: {e}", f.name),
            };
            assert_eq!(got, f.expected, "{}", f.name);
        }
    }
    let excluded = forms
        .iter()
        .filter(|f| f.expected == Expected::Rejected(RejectReason::ExcludedByPolarization))
        .count();
    assert_eq!(excluded, 2);
    let reason = |t: Matrix, w| match classify(&t, w) {
        Err(Error::Classification(e)) => e.reason,
        other => panic!("unexpected {other:?}"),
    };
    let mixed = Matrix::diagonal(&[int(1), int(1), int(-1), int(-1)]);
    assert_eq!(reason(mixed, Weight::THREE), RejectReason::MixedCase);
    let wild = Matrix::from_ints(&[&[2, 0], &[0, 1]]);
    assert_eq!(reason(wild, Weight::ONE), RejectReason::NotQuasiUnipotent);
    format!(
        "{} normal forms x {per_form} conjugates classified; 2 excluded forms, MixedCase, NotQuasiUnipotent",
        forms.len()
    )
}

fn criterion_9() -> String {
    let bound = arakelov_bound(3, 0, 3, &[1, 1], &[0, 0]).unwrap();
    assert_eq!(bound, ratio(3, 2));
    let mut rows = 0;
    for row in load_table(table_path()).unwrap() {
        if row.e.is_constant() && row.e.constant == 1 {
            for i in 0..row.alternatives() {
                assert!(
                    int(row.assignment(i, 0).a) <= bound,
                    "model {}",
                    row.model_id
                );
            }
            rows += 1;
        }
    }
    assert_eq!(rows, 14);
    format!("bound 3/2; a <= 1 on all {rows} rows with e=1")
}

type Criterion = (&'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 9] = [
        ("table audit", criterion_1),
        ("quintic pipeline", criterion_2),
        ("two-cubics fixture", criterion_3),
        ("decomposed case", criterion_4),
        ("L2 twist tables", criterion_5),
        ("weight filtration oracle", criterion_6),
        ("check-sum identity", criterion_7),
        ("classification completeness", criterion_8),
        ("Arakelov gate", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!(
                "criterion {}: PASS  {name}: {detail} [{:.1?}]",
                i + 1,
                start.elapsed()
            ),
            Err(payload) => {
                failed += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
