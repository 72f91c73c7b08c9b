//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and asserting its time budget. Run with
//! `cargo test -p quiverpoly --test acceptance -- --nocapture`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use quiverpoly::collapse::{
    generic_multidegree, generic_sum_check, special_linear_adjoint, sum_formula_check, Collapsing,
};
use quiverpoly::laurent::{demazure, lowest_term, LaurentPoly};
use quiverpoly::poly::{divided_difference, LinearForm, Mono, MultiPoly, Reflection, VarSet};
use quiverpoly::quiver::{
    ar_quiver, d4_inward, enumerate_orbits, root_order, validate_adapted, AdaptedWord,
    DimVec, Multiplicities, Quiver, QuiverContext,
};
use quiverpoly::rep::{ext_dim, indecomposables, IndecTable};
use quiverpoly::rootsys::{build_root_system, DynkinDiagram, Root, Series};
use quiverpoly::schubert::{component_formula_a3, double_schur_rect, DoubleVarPair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

fn criterion<F: FnOnce() + std::panic::UnwindSafe>(number: usize, name: &str, budget: Duration, body: F) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(body);
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("criterion {number} ({name}): PASS in {elapsed:.2?}");
        }
        Ok(()) => {
            println!("criterion {number} ({name}): FAIL (over budget: {elapsed:.2?} > {budget:.2?})");
            panic!("criterion {number} exceeded its time budget");
        }
        Err(cause) => {
            println!("criterion {number} ({name}): FAIL in {elapsed:.2?}");
            std::panic::resume_unwind(cause);
        }
    }
}

fn a3_setup() -> (QuiverContext, DimVec, Multiplicities) {
    let ctx = QuiverContext::new(Quiver::linear_a(3));
    let d = DimVec(vec![2, 3, 2]);
    let ro = &ctx.root_order;
    let mut m = vec![0usize; 6];
    m[ro.beta_index(&Root(vec![1, 1, 0])).unwrap()] = 2;
    m[ro.beta_index(&Root(vec![0, 1, 1])).unwrap()] = 1;
    m[ro.beta_index(&Root(vec![0, 0, 1])).unwrap()] = 1;
    (ctx, d, Multiplicities(m))
}

/// The reference eight-product expansion of the rank-3 orbit class.
fn a3_reference_class(vs: &VarSet) -> MultiPoly {
    let n = vs.len();
    let a = |k: usize| vs.xvar(0, k);
    let b = |k: usize| vs.xvar(1, k);
    let c = |k: usize| vs.xvar(2, k);
    let diff = |u: usize, v: usize| LinearForm::difference(n, u, v);
    let products: Vec<Vec<LinearForm>> = vec![
        vec![diff(b(0), c(0)), diff(b(0), c(1)), diff(b(1), c(0)), diff(b(1), c(1))],
        vec![diff(a(1), b(1)), diff(b(0), c(0)), diff(b(0), c(1)), diff(b(1), c(1))],
        vec![diff(a(0), b(0)), diff(b(0), c(0)), diff(b(0), c(1)), diff(b(1), c(1))],
        vec![diff(a(0), b(0)), diff(a(1), b(0)), diff(b(0), c(1)), diff(b(1), c(1))],
        vec![diff(a(1), b(1)), diff(b(0), c(0)), diff(b(0), c(1)), diff(b(2), c(0))],
        vec![diff(a(0), b(0)), diff(b(0), c(0)), diff(b(0), c(1)), diff(b(2), c(0))],
        vec![diff(a(0), b(0)), diff(a(1), b(0)), diff(b(0), c(1)), diff(b(2), c(0))],
        vec![diff(a(0), b(0)), diff(a(1), b(0)), diff(b(1), c(0)), diff(b(2), c(0))],
    ];
    let mut acc = MultiPoly::zero(n);
    for p in products {
        acc = acc.add(&MultiPoly::product_of_linears(n, &p));
    }
    acc
}

#[test]
fn criterion_1_a3_golden_multidegree() {
    criterion(1, "A3 golden multidegree", Duration::from_secs(1), || {
        let (ctx, d, m) = a3_setup();
        let collapsing = Collapsing::new(&ctx.quiver, &ctx.root_order, &d, &m).unwrap();
        let vs = &collapsing.varset;
        // [Z_m] is the reference seven-factor product
        let rendered: Vec<String> =
            collapsing.weights.iter().map(|w| format!("{}", w.display(vs, true))).collect();
        assert_eq!(
            rendered,
            vec!["a1 - b3", "a2 - b3", "b1 - c1", "b1 - c2", "b2 - c1", "b2 - c2", "b3 - c2"]
        );
        // and the operator word is two vertex-2 letters and one vertex-3 letter
        assert_eq!(collapsing.word, vec![(1, 0), (1, 1), (2, 0)]);
        let got = collapsing.multidegree().unwrap();
        assert_eq!(got, a3_reference_class(vs), "pipeline class equals the reference expansion");
    });
}

#[test]
fn criterion_2_a3_component_formula() {
    criterion(2, "A3 component-formula cross-check", Duration::from_secs(1), || {
        let (ctx, d, m) = a3_setup();
        let collapsing = Collapsing::new(&ctx.quiver, &ctx.root_order, &d, &m).unwrap();
        let pipeline = collapsing.multidegree().unwrap();
        let oracle = component_formula_a3(&collapsing.varset).unwrap();
        assert_eq!(pipeline, oracle, "independent Schubert oracle agrees");
    });
}

#[test]
fn criterion_3_giambelli_thom_porteous_sweep() {
    criterion(3, "Giambelli-Thom-Porteous sweep", Duration::from_secs(10), || {
        let ctx = QuiverContext::new(Quiver::linear_a(2));
        let full_root = ctx.root_order.beta_index(&Root(vec![1, 1])).unwrap();
        for m_dim in 1..=4usize {
            for n_dim in 1..=4usize {
                let d = DimVec(vec![m_dim, n_dim]);
                for orbit in enumerate_orbits(&ctx.root_order, &d) {
                    let r = orbit.0[full_root];
                    let collapsing = Collapsing::new(&ctx.quiver, &ctx.root_order, &d, &orbit).unwrap();
                    let pipeline = collapsing.multidegree().unwrap();
                    let vs = &collapsing.varset;
                    let pair = DoubleVarPair::new(
                        vs.len(),
                        (0..m_dim).map(|k| vs.xvar(0, k)).collect(),
                        (0..n_dim).map(|k| vs.xvar(1, k)).collect(),
                    )
                    .unwrap();
                    let oracle = double_schur_rect(m_dim - r, n_dim - r, &pair).unwrap();
                    assert_eq!(pipeline, oracle, "(m,n,r) = ({m_dim},{n_dim},{r})");
                }
            }
        }
    });
}

#[test]
fn criterion_4_non_quiver_examples() {
    criterion(4, "generic collapsing examples", Duration::from_secs(1), || {
        let sl2 = special_linear_adjoint(2);
        let got = generic_multidegree(&sl2).unwrap();
        assert_eq!(got, MultiPoly::constant(sl2.varset.len(), 2), "2x2 adjoint class is 2");
        let sl3 = special_linear_adjoint(3);
        let got = generic_multidegree(&sl3).unwrap();
        assert_eq!(got, MultiPoly::constant(sl3.varset.len(), 6), "3x3 adjoint class is 3!");
        generic_sum_check(&sl3, &got, 20, 0).unwrap();
    });
}

#[test]
fn criterion_5_d4_goldens() {
    criterion(5, "D4 goldens", Duration::from_secs(1), || {
        let q = d4_inward();
        let letters: Vec<usize> =
            "213423142341".chars().map(|c| c.to_digit(10).unwrap() as usize - 1).collect();
        assert!(validate_adapted(&q, &letters), "the reference word is adapted");
        let rs = build_root_system(q.diagram.clone());
        let ro = root_order(&rs, &AdaptedWord { letters: letters.clone() }).unwrap();
        // the reference matrix: rows 1..9 are word-independent; the commuting
        // tail {a1, a3, a4} appears in the order determined by the word
        let reference: Vec<Vec<i64>> = vec![
            vec![0, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![0, 1, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 2, 1, 1],
            vec![1, 1, 0, 1],
            vec![0, 1, 1, 1],
            vec![1, 1, 1, 0],
            vec![1, 1, 1, 1],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, 0, 1, 0],
        ];
        for j in 0..9 {
            assert_eq!(ro.gammas[j].0, reference[j], "row {}", j + 1);
        }
        for j in 9..12 {
            assert_eq!(ro.gammas[j], Root::simple(letters[j], 4), "tail rows are the word's simples");
        }
        let mut tail_got: Vec<&Root> = ro.gammas[9..].iter().collect();
        tail_got.sort();
        let tail_ref: Vec<Root> = reference[9..].iter().map(|r| Root(r.clone())).collect();
        let mut tail_ref: Vec<&Root> = tail_ref.iter().collect();
        tail_ref.sort();
        assert_eq!(tail_got, tail_ref, "tail block is the same set of simples");
        // the sibling word with tail 413 spells the same element and gives the
        // matrix verbatim
        let sibling: Vec<usize> =
            "213423142413".chars().map(|c| c.to_digit(10).unwrap() as usize - 1).collect();
        assert!(validate_adapted(&q, &sibling));
        let ro_sibling = root_order(&rs, &AdaptedWord { letters: sibling }).unwrap();
        let expected: Vec<Root> = reference.into_iter().map(Root).collect();
        assert_eq!(ro_sibling.gammas, expected, "verbatim matrix for the sibling word");
        // AR quiver: placements and the fifteen reference arrows
        let ar = ar_quiver(&q, &ro);
        let expected_rows = [1, 0, 2, 3, 1, 2, 0, 3, 1, 2, 3, 0];
        let expected_cols = [0, 1, 1, 1, 2, 3, 3, 3, 4, 5, 5, 5];
        for j in 0..12 {
            assert_eq!(ar.placements[j], (expected_rows[j], expected_cols[j]), "placement of root {}", j + 1);
        }
        let mut expected_edges = vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (2, 4),
            (3, 4),
            (4, 5),
            (4, 6),
            (4, 7),
            (5, 8),
            (6, 8),
            (7, 8),
            (8, 9),
            (8, 10),
            (8, 11),
        ];
        expected_edges.sort_unstable();
        assert_eq!(ar.edges, expected_edges);
    });
}

#[test]
fn criterion_6_k_h_compatibility() {
    criterion(6, "K/H compatibility", Duration::from_secs(30), || {
        let cases = vec![
            (Quiver::linear_a(3), DimVec(vec![2, 3, 2])),
            (d4_inward(), DimVec(vec![1, 2, 1, 1])),
        ];
        for (q, d) in cases {
            let ctx = QuiverContext::new(q);
            for orbit in enumerate_orbits(&ctx.root_order, &d) {
                let collapsing = Collapsing::new(&ctx.quiver, &ctx.root_order, &d, &orbit).unwrap();
                let multidegree = collapsing.multidegree().unwrap();
                let (kpoly, _) = collapsing.kpolynomial().unwrap();
                let low = lowest_term(&kpoly, collapsing.orbit_codim() + 1).unwrap();
                assert_eq!(low, multidegree, "lowest term of the K-class is the multidegree");
                // Demazure stabilization: one more pass of the word is the identity
                let mut again = kpoly.clone();
                for &(i, k) in collapsing.word.iter().rev() {
                    let u = collapsing.varset.xvar(i, k);
                    let v = collapsing.varset.xvar(i, k + 1);
                    again = demazure(&again, u, v).unwrap();
                }
                assert_eq!(again, kpoly, "extra operator pass changes nothing");
            }
        }
    });
}

#[test]
fn criterion_7_summation_formula() {
    criterion(7, "summation-formula identity", Duration::from_secs(60), || {
        let ctx = QuiverContext::new(Quiver::linear_a(2));
        for m_dim in 0..=3usize {
            for n_dim in 0..=3usize {
                let d = DimVec(vec![m_dim, n_dim]);
                for orbit in enumerate_orbits(&ctx.root_order, &d) {
                    sum_formula_check(&ctx.quiver, &ctx.root_order, &d, &orbit, 20, 0xC0FFEE).unwrap();
                }
            }
        }
        let (ctx, d, m) = a3_setup();
        sum_formula_check(&ctx.quiver, &ctx.root_order, &d, &m, 20, 0xC0FFEE).unwrap();
    });
}

fn seeded_poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: i32, terms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    for _ in 0..terms {
        let exps: Vec<i32> = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
        p.add_term(Mono(exps), BigInt::from(rng.gen_range(-20i64..=20)));
    }
    p
}

fn seeded_laurent(rng: &mut ChaCha8Rng, nvars: usize) -> LaurentPoly {
    let mut p = LaurentPoly::zero(nvars);
    for _ in 0..6 {
        let exps: Vec<i32> = (0..nvars).map(|_| rng.gen_range(-3..=3)).collect();
        p.add_term(Mono(exps), BigInt::from(rng.gen_range(-9i64..=9)));
    }
    p
}

#[test]
fn criterion_8_structural_property_suite() {
    criterion(8, "structural property suite", Duration::from_secs(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        // operator identities on >= 100 seeded random polynomials each
        for _ in 0..100 {
            let nvars = 8;
            let f = seeded_poly(&mut rng, nvars, 6, 8);
            let g = seeded_poly(&mut rng, nvars, 3, 5);
            let r0 = Reflection::transposition(nvars, 0, 1);
            let r1 = Reflection::transposition(nvars, 1, 2);
            let r3 = Reflection::transposition(nvars, 3, 4);
            let d = |h: &MultiPoly, r: &Reflection| divided_difference(h, r).unwrap();
            // nilpotence
            assert!(d(&d(&f, &r0), &r0).is_zero());
            // braid and commutation
            assert_eq!(d(&d(&d(&f, &r0), &r1), &r0), d(&d(&d(&f, &r1), &r0), &r1));
            assert_eq!(d(&d(&f, &r0), &r3), d(&d(&f, &r3), &r0));
            // twisted Leibniz
            let lhs = d(&f.mul(&g), &r0);
            let rhs = d(&f, &r0).mul(&g).add(&r0.apply(&f).mul(&d(&g, &r0)));
            assert_eq!(lhs, rhs);
            // Demazure idempotence and braid
            let lf = seeded_laurent(&mut rng, 4);
            let dem = |h: &LaurentPoly, u: usize, v: usize| demazure(h, u, v).unwrap();
            let once = dem(&lf, 0, 1);
            assert_eq!(dem(&once, 0, 1), once);
            assert_eq!(
                dem(&dem(&dem(&lf, 0, 1), 1, 2), 0, 1),
                dem(&dem(&dem(&lf, 1, 2), 0, 1), 1, 2)
            );
            assert_eq!(dem(&dem(&lf, 0, 1), 2, 3), dem(&dem(&lf, 2, 3), 0, 1));
        }

        // no-skip, operator count, degree = codimension, and GL-invariance on
        // enumerated orbits
        let mut orbit_cases: Vec<(Quiver, Vec<Vec<usize>>)> = Vec::new();
        for n in 1..=3usize {
            let dims: Vec<Vec<usize>> = cartesian(n, 3);
            orbit_cases.push((Quiver::linear_a(n), dims));
        }
        orbit_cases.push((d4_inward(), cartesian(4, 2)));
        for (q, dim_list) in orbit_cases {
            let ctx = QuiverContext::new(q);
            let table = indecomposables(&ctx.quiver, &ctx.root_order).unwrap();
            for dims in dim_list {
                let d = DimVec(dims);
                for orbit in enumerate_orbits(&ctx.root_order, &d) {
                    let collapsing = Collapsing::new(&ctx.quiver, &ctx.root_order, &d, &orbit).unwrap();
                    // multidegree() errors if any reduced-word step vanishes
                    let multidegree = collapsing.multidegree().unwrap();
                    let expected_ops: usize = (0..ctx.quiver.rank())
                        .map(|i| {
                            let c2 = |k: usize| k * k.saturating_sub(1) / 2;
                            let sizes = &collapsing.block.sizes[i];
                            c2(d.0[i]) - sizes.iter().map(|&s| c2(s)).sum::<usize>()
                        })
                        .sum();
                    assert_eq!(collapsing.word.len(), expected_ops, "operator count");
                    let codim = table.codim_orbit(&ctx.root_order, &orbit);
                    assert_eq!(
                        multidegree.homogeneous_degree(),
                        Some(codim as i64),
                        "degree equals the Ext-oracle codimension"
                    );
                    // the final class is invariant under every vertex reflection
                    for i in 0..ctx.quiver.rank() {
                        for k in 0..d.0[i].saturating_sub(1) {
                            let r = Reflection::transposition(
                                collapsing.varset.len(),
                                collapsing.varset.xvar(i, k),
                                collapsing.varset.xvar(i, k + 1),
                            );
                            assert_eq!(r.apply(&multidegree), multidegree, "GL-invariance");
                        }
                    }
                }
            }
        }

        // Ext vanishing along the root order, exhaustively
        for (series, rank) in [(Series::A, 1), (Series::A, 2), (Series::A, 3), (Series::A, 4), (Series::D, 4), (Series::D, 5)] {
            let q = if (series, rank) == (Series::D, 4) {
                d4_inward()
            } else {
                let diagram = DynkinDiagram::new(series, rank).unwrap();
                Quiver::new(series, rank, diagram.edges().to_vec()).unwrap()
            };
            let ctx = QuiverContext::new(q);
            let table = indecomposables(&ctx.quiver, &ctx.root_order).unwrap();
            let nroots = ctx.root_order.n_roots();
            for j in 0..nroots {
                for k in j..nroots {
                    assert_eq!(
                        ext_dim(&ctx.quiver, table.by_gamma(j), table.by_gamma(k)),
                        0,
                        "{series}{rank}: Ext(I_{}, I_{})",
                        j + 1,
                        k + 1
                    );
                }
            }
        }

        // indecomposable dimension calibration for all orientations of rank <= 4
        for (series, rank) in [(Series::A, 1), (Series::A, 2), (Series::A, 3), (Series::A, 4), (Series::D, 4)] {
            let diagram = DynkinDiagram::new(series, rank).unwrap();
            let edges = diagram.edges().to_vec();
            for mask in 0u32..(1 << edges.len()) {
                let arrows: Vec<(usize, usize)> = edges
                    .iter()
                    .enumerate()
                    .map(|(e, &(a, b))| if mask & (1 << e) != 0 { (b, a) } else { (a, b) })
                    .collect();
                let q = Quiver::new(series, rank, arrows).unwrap();
                let ctx = QuiverContext::new(q);
                // the table constructor asserts dim(I_j) = gamma_j for all j
                let table: IndecTable = indecomposables(&ctx.quiver, &ctx.root_order).unwrap();
                assert_eq!(table.n_roots(), ctx.root_order.n_roots());
            }
        }
    });
}

fn cartesian(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for base in &out {
            for v in 0..=max {
                let mut row = base.clone();
                row.push(v);
                next.push(row);
            }
        }
        out = next;
    }
    out
}

#[test]
fn criterion_9_degeneration_poset() {
    criterion(9, "degeneration poset sanity", Duration::from_secs(60), || {
        // A2 d = (2,2): the three orbits form a chain ordered by rank
        let ctx = QuiverContext::new(Quiver::linear_a(2));
        let table = indecomposables(&ctx.quiver, &ctx.root_order).unwrap();
        let d = DimVec(vec![2, 2]);
        let full = ctx.root_order.beta_index(&Root(vec![1, 1])).unwrap();
        let mut orbits = enumerate_orbits(&ctx.root_order, &d);
        orbits.sort_by_key(|m| m.0[full]);
        assert_eq!(orbits.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let le = table.degeneration_leq(&ctx.root_order, &orbits[i], &orbits[j]).unwrap();
                assert_eq!(le, i <= j, "chain order by rank: {i} vs {j}");
            }
        }

        // dense orbit is the unique maximum for every tested pair
        let cases = vec![
            (Quiver::linear_a(2), DimVec(vec![2, 2])),
            (Quiver::linear_a(2), DimVec(vec![3, 2])),
            (Quiver::linear_a(3), DimVec(vec![2, 3, 2])),
            (Quiver::linear_a(3), DimVec(vec![1, 1, 1])),
            (d4_inward(), DimVec(vec![1, 2, 1, 1])),
        ];
        for (q, d) in cases {
            let ctx = QuiverContext::new(q);
            let table = indecomposables(&ctx.quiver, &ctx.root_order).unwrap();
            let orbits = enumerate_orbits(&ctx.root_order, &d);
            let dense = table.dense_orbit(&ctx.root_order, &d).unwrap();
            for orbit in &orbits {
                assert!(
                    table.degeneration_leq(&ctx.root_order, orbit, &dense).unwrap(),
                    "dense orbit dominates"
                );
                if *orbit != dense {
                    assert!(
                        !table.degeneration_leq(&ctx.root_order, &dense, orbit).unwrap(),
                        "nothing else dominates the dense orbit"
                    );
                }
            }
        }

        // the order is transitive on the full A3 orbit set
        let (ctx, d, _) = a3_setup();
        let table = indecomposables(&ctx.quiver, &ctx.root_order).unwrap();
        let orbits = enumerate_orbits(&ctx.root_order, &d);
        let n = orbits.len();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                leq[i][j] = table.degeneration_leq(&ctx.root_order, &orbits[i], &orbits[j]).unwrap();
            }
        }
        for i in 0..n {
            assert!(leq[i][i], "reflexive");
            for j in 0..n {
                for k in 0..n {
                    if leq[i][j] && leq[j][k] {
                        assert!(leq[i][k], "transitive: {i} <= {j} <= {k}");
                    }
                }
            }
        }

        // decompose inverts the direct-sum construction on all A3 orbits
        for orbit in &orbits {
            let rep = table.rep_from_multiplicities(&ctx.root_order, orbit);
            assert_eq!(&table.decompose(&rep).unwrap(), orbit);
        }
    });
}

/// A non-numbered smoke check used while developing the suite: the rational
/// sample plumbing stays exact.
#[test]
fn exactness_of_rational_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x: i64 = rng.gen_range(-1_000_000..=1_000_000);
    let r = BigRational::from_integer(BigInt::from(x));
    assert_eq!(r * BigRational::one(), BigRational::from_integer(BigInt::from(x)));
}
