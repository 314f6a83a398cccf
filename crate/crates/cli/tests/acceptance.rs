//! Acceptance gate: ten criteria, one test each, printing one PASS/FAIL line
//! per criterion (visible with `-- --nocapture`; the test name itself carries
//! the verdict in default output).

use std::collections::HashSet;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

use num_rational::BigRational;
use serde_json::Value;

use borel_index_core::hseq::{
    conclude_index_from_bound, enumerate_hsequences, min_c, min_length, panov_sequence,
    validate_hsequence,
};
use borel_index_core::ideals::{
    enumerate_ideals, is_ad_nilpotent_ideal, is_upper_set, parse_ideal, upper_closure, RootSubset,
};
use borel_index_core::oracle::{index_of, is_stable, module_index};
use borel_index_core::quotients::{
    build_quotient, form_matrix, special_form, QuotientAlgebra, QuotientKind,
};
use borel_index_core::rootsys::{Convention, RootSystem, TypeLabel};

fn criterion<F: FnOnce() + UnwindSafe>(number: u32, label: &str, body: F) {
    match catch_unwind(body) {
        Ok(()) => println!("ACCEPTANCE {number:02} PASS {label}"),
        Err(e) => {
            println!("ACCEPTANCE {number:02} FAIL {label}");
            resume_unwind(e);
        }
    }
}

fn system(t: TypeLabel, l: usize) -> RootSystem {
    RootSystem::build(t, l).unwrap()
}

fn quotient_pair(rs: &RootSystem, phi: &RootSubset) -> (QuotientAlgebra, QuotientAlgebra) {
    let nc = rs.chevalley_constants(Convention::Plus);
    (
        build_quotient(rs, phi, QuotientKind::BorelQuotient, &nc).unwrap(),
        build_quotient(rs, phi, QuotientKind::NilradicalQuotient, &nc).unwrap(),
    )
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

const TRIALS: u32 = 8;
const COEFF_BOUND: u64 = 10_000;
const BUDGET: u64 = 200_000_000;

#[test]
fn a01_interval_bound_is_exact_up_to_rank_five() {
    criterion(1, "interval-order bound equals the estimated index on every ideal, ranks 1-5", || {
        let mut checked = 0;
        for l in 1..=5 {
            let rs = system(TypeLabel::A, l);
            for (i, ideal) in enumerate_ideals(&rs).into_iter().enumerate() {
                let h = panov_sequence(&rs, &ideal.complement()).unwrap();
                let (q, _) = quotient_pair(&rs, ideal.phi());
                let est = index_of(&q, TRIALS, COEFF_BOUND, 1000 + i as u64).unwrap();
                assert_eq!(est.value, h.c(), "{}, ideal {}", l, ideal.key(&rs));
                checked += 1;
            }
        }
        assert_eq!(checked, 2 + 5 + 14 + 42 + 132);
    });
}

#[test]
fn a02_nilradical_index_equals_sequence_length() {
    criterion(2, "nilradical quotient index equals the interval sequence length, ranks 1-5", || {
        for l in 1..=5 {
            let rs = system(TypeLabel::A, l);
            for (i, ideal) in enumerate_ideals(&rs).into_iter().enumerate() {
                let h = panov_sequence(&rs, &ideal.complement()).unwrap();
                let (_, m) = quotient_pair(&rs, ideal.phi());
                let est = index_of(&m, TRIALS, COEFF_BOUND, 2000 + i as u64).unwrap();
                assert_eq!(est.value, h.len() as i64, "{}, ideal {}", l, ideal.key(&rs));
            }
        }
    });
}

#[test]
fn a03_module_index_equals_length_minus_span() {
    criterion(3, "module index equals sequence length minus span dimension, ranks 1-5", || {
        for l in 1..=5 {
            let rs = system(TypeLabel::A, l);
            for (i, ideal) in enumerate_ideals(&rs).into_iter().enumerate() {
                let h = panov_sequence(&rs, &ideal.complement()).unwrap();
                let (q, m) = quotient_pair(&rs, ideal.phi());
                let est = module_index(&q, &m, TRIALS, COEFF_BOUND, 3000 + i as u64).unwrap();
                assert_eq!(
                    est.value,
                    h.len() as i64 - h.d() as i64,
                    "{}, ideal {}",
                    l,
                    ideal.key(&rs)
                );
            }
        }
    });
}

#[test]
fn a04_minima_upper_bound_both_indexes() {
    criterion(4, "exhaustive minima bound the estimated indexes on every small-rank ideal", || {
        let systems = [
            (TypeLabel::A, 1),
            (TypeLabel::A, 2),
            (TypeLabel::A, 3),
            (TypeLabel::A, 4),
            (TypeLabel::B, 2),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::C, 4),
            (TypeLabel::D, 4),
            (TypeLabel::G, 2),
        ];
        for (t, l) in systems {
            let rs = system(t, l);
            for (i, ideal) in enumerate_ideals(&rs).into_iter().enumerate() {
                let e = ideal.complement();
                let mc = min_c(&rs, &e, BUDGET).unwrap();
                let ml = min_length(&rs, &e, BUDGET).unwrap();
                assert!(mc.exhaustive && ml.exhaustive, "{t}{l} searches must finish");
                let (q, m) = quotient_pair(&rs, ideal.phi());
                let seed = 4000 + i as u64;
                let chi_q = index_of(&q, TRIALS, COEFF_BOUND, seed).unwrap();
                let chi_m = index_of(&m, TRIALS, COEFF_BOUND, seed).unwrap();
                assert!(
                    chi_q.value <= mc.value.unwrap(),
                    "{t}{l} ideal {}: index {} above bound {:?}",
                    ideal.key(&rs),
                    chi_q.value,
                    mc.value
                );
                assert!(
                    chi_m.value <= ml.value.unwrap(),
                    "{t}{l} ideal {}: nilradical index {} above bound {:?}",
                    ideal.key(&rs),
                    chi_m.value,
                    ml.value
                );
            }
        }
    });
}

#[test]
fn a05_rank_seven_showcase() {
    criterion(5, "rank-7 three-generator ideal: length 8, d 7, forced index 1, loose m-bound", || {
        let rs = system(TypeLabel::C, 7);
        let ideal =
            parse_ideal(&rs, "1 1 1 1 1 0 0;0 0 1 1 2 2 1;0 0 0 2 2 2 1").unwrap();
        let e = ideal.complement();
        assert_eq!((ideal.phi().card(), e.card()), (17, 32));

        let ml = min_length(&rs, &e, BUDGET).unwrap();
        assert!(ml.exhaustive);
        assert_eq!(ml.value, Some(8));
        let w = ml.witness.unwrap();
        assert_eq!((w.len(), w.d()), (8, 7));

        let mc = min_c(&rs, &e, BUDGET).unwrap();
        assert!(mc.exhaustive);
        assert_eq!(mc.value, Some(1));
        assert_eq!(conclude_index_from_bound(1), Some(1));

        let (q, m) = quotient_pair(&rs, ideal.phi());
        let chi_q = index_of(&q, TRIALS, COEFF_BOUND, 5).unwrap();
        assert_eq!(chi_q.value, 1, "bound conclusion and estimate agree");
        let chi_m = index_of(&m, TRIALS, COEFF_BOUND, 5).unwrap();
        assert!(chi_m.value <= 6, "nilradical index estimate {}", chi_m.value);
        assert!(
            chi_m.value < ml.value.unwrap(),
            "the length bound is strict here: {} vs {}",
            chi_m.value,
            ml.value.unwrap()
        );
    });
}

#[test]
fn a06_five_block_peeling_reproduced_exactly() {
    criterion(6, "rank-6 five-block peeling: exact blocks, d 5; longer variant reaches d 6", || {
        let rs = system(TypeLabel::A, 6);
        let aij = |i, j| rs.interval_root_index(i, j).unwrap();
        let ideal = upper_closure(&rs, &[aij(1, 4), aij(2, 6)]);
        let e = ideal.complement();
        let seq = [aij(1, 3), aij(2, 5), aij(3, 6), aij(4, 6), aij(4, 4)];
        let h = validate_hsequence(&rs, &e, &seq).unwrap().into_valid().unwrap();
        let expected: Vec<Vec<usize>> = vec![
            vec![(1, 3), (1, 1), (2, 3), (1, 2), (3, 3)],
            vec![(2, 5), (2, 2), (3, 5), (2, 4), (5, 5)],
            vec![(3, 6), (3, 4), (5, 6)],
            vec![(4, 6), (4, 5), (6, 6)],
            vec![(4, 4)],
        ]
        .into_iter()
        .map(|b| b.into_iter().map(|(i, j)| aij(i, j)).collect())
        .collect();
        assert_eq!(h.gamma_blocks().len(), 5);
        for (block, want) in h.gamma_blocks().iter().zip(&expected) {
            let got: HashSet<usize> = block.iter().collect();
            let want: HashSet<usize> = want.iter().copied().collect();
            assert_eq!(got, want);
        }
        assert_eq!(h.d(), 5);

        let seq7 = [
            aij(2, 5),
            aij(3, 6),
            aij(4, 4),
            aij(6, 6),
            aij(1, 3),
            aij(1, 2),
            aij(1, 1),
        ];
        let h7 = validate_hsequence(&rs, &e, &seq7).unwrap().into_valid().unwrap();
        assert_eq!(h7.d(), 6);
    });
}

#[test]
fn a07_interval_sequence_goldens_at_rank_six() {
    criterion(7, "rank-6 interval sequences: printed heads, c 0; long variant (8, 6, 2)", || {
        let rs = system(TypeLabel::A, 6);
        let aij = |i, j| rs.interval_root_index(i, j).unwrap();

        // the two-generator ideal reproduces the printed six heads exactly
        let two = upper_closure(&rs, &[aij(2, 5), aij(3, 6)]);
        let e2 = two.complement();
        let h = panov_sequence(&rs, &e2).unwrap();
        let printed: Vec<usize> = [(1, 4), (2, 3), (3, 5), (4, 6), (5, 6), (5, 5)]
            .iter()
            .map(|&(i, j)| aij(i, j))
            .collect();
        assert_eq!(h.thetas(), &printed[..]);
        assert_eq!(h.c(), 0);

        // the printed longer sequence for the same set: length 8, d 6, c 2
        let long = [
            aij(3, 5),
            aij(4, 6),
            aij(6, 6),
            aij(1, 4),
            aij(1, 3),
            aij(1, 2),
            aij(2, 3),
            aij(2, 2),
        ];
        let h8 = validate_hsequence(&rs, &e2, &long).unwrap().into_valid().unwrap();
        assert_eq!((h8.len(), h8.d(), h8.c()), (8, 6, 2));

        // companion: the single-generator ideal peels to (7, 6, 1) instead
        let one = upper_closure(&rs, &[aij(2, 5)]);
        let h1 = panov_sequence(&rs, &one.complement()).unwrap();
        assert_eq!((h1.len(), h1.d(), h1.c()), (7, 6, 1));
        // and the longer printed sequence does not validate against it
        assert!(validate_hsequence(&rs, &one.complement(), &long)
            .unwrap()
            .into_valid()
            .is_none());
    });
}

#[test]
fn a08_stability_goldens_at_ranks_five_and_six() {
    criterion(8, "rank-5 family is never stable (printed stabilizer); rank-6 ideal is stable", || {
        let rs = system(TypeLabel::A, 5);
        let aij = |i, j| rs.interval_root_index(i, j).unwrap();
        let ideal = upper_closure(&rs, &[aij(1, 3), aij(3, 5)]);
        let e = ideal.complement();
        let (q, _) = quotient_pair(&rs, ideal.phi());
        let chi_q = index_of(&q, TRIALS, COEFF_BOUND, 8).unwrap();
        assert_eq!(chi_q.value, 1);

        let h = panov_sequence(&rs, &e).unwrap();
        assert_eq!(h.len(), 6);
        for t in 1..=3i64 {
            let coeffs = vec![rat(1), rat(1), rat(1), rat(1), rat(1), rat(t)];
            let f = special_form(&q, &h, &coeffs).unwrap();
            let report = is_stable(&q, &f).unwrap();
            assert!(!report.stable, "t={t}");
            assert_eq!(report.stabilizer.dim(), 1, "t={t}");
            let v = &report.stabilizer.basis()[0];

            // no Cartan component
            for i in 0..q.num_cartan() {
                assert!(num_traits::Zero::is_zero(&v[i]), "t={t}");
            }
            // support is exactly the printed six roots, with the printed
            // coefficient pattern after normalizing the first-root entry
            let support: Vec<(Vec<i64>, BigRational)> = [
                (vec![1, 0, 0, 0, 0], rat(1)),
                (vec![0, 0, 1, 0, 0], rat(1)),
                (vec![0, 0, 0, 0, 1], ratio(1, t)),
                (vec![0, 1, 1, 0, 0], ratio(t + 1, t)),
                (vec![0, 0, 1, 1, 0], rat(1)),
                (vec![0, 0, 0, 1, 1], rat(1)),
            ]
            .into_iter()
            .collect();
            let scale = {
                let pos = q.root_position(rs.index_of(&[1, 0, 0, 0, 0]).unwrap()).unwrap();
                let x = &v[pos];
                assert!(!num_traits::Zero::is_zero(x));
                if x < &BigRational::from_integer(0.into()) { -x.clone() } else { x.clone() }
            };
            let mut expected_positions = HashSet::new();
            for (coords, want) in &support {
                let pos = q.root_position(rs.index_of(coords).unwrap()).unwrap();
                expected_positions.insert(pos);
                let x = &v[pos];
                let mag = if x < &BigRational::from_integer(0.into()) { -x.clone() } else { x.clone() };
                assert_eq!(&(mag / &scale), want, "t={t} root {coords:?}");
            }
            for (i, x) in v.iter().enumerate() {
                if !num_traits::Zero::is_zero(x) {
                    assert!(expected_positions.contains(&i), "t={t} stray support at {i}");
                }
            }
        }

        // the rank-6 two-generator ideal: five random special forms, all stable
        let rs6 = system(TypeLabel::A, 6);
        let a6 = |i, j| rs6.interval_root_index(i, j).unwrap();
        let ideal6 = upper_closure(&rs6, &[a6(2, 5), a6(3, 6)]);
        let e6 = ideal6.complement();
        let (q6, _) = quotient_pair(&rs6, ideal6.phi());
        let h6 = panov_sequence(&rs6, &e6).unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(123);
        for sample in 0..5 {
            let coeffs: Vec<BigRational> =
                (0..h6.len()).map(|_| rat(rng.gen_range(1..=50))).collect();
            let f = special_form(&q6, &h6, &coeffs).unwrap();
            let report = is_stable(&q6, &f).unwrap();
            assert!(report.stable, "sample {sample} with {coeffs:?}");
        }
    });
}

#[test]
fn a09_property_suites() {
    criterion(9, "structure, form, peeling, parity, convention, and ideal properties", || {
        // bracket tables satisfy the Jacobi identity; form matrices are
        // antisymmetric with even rank (so dim − index is even)
        for (t, ranks) in [
            (TypeLabel::A, 1..=5),
            (TypeLabel::B, 2..=5),
            (TypeLabel::C, 3..=5),
            (TypeLabel::D, 4..=5),
            (TypeLabel::F, 4..=4),
            (TypeLabel::G, 2..=2),
        ] {
            for l in ranks {
                let rs = system(t, l);
                let nc = rs.chevalley_constants(Convention::Plus);
                for (i, ideal) in enumerate_ideals(&rs).into_iter().enumerate() {
                    for kind in [QuotientKind::BorelQuotient, QuotientKind::NilradicalQuotient] {
                        let alg = build_quotient(&rs, ideal.phi(), kind, &nc).unwrap();
                        assert!(alg.jacobi_identity_holds(), "{t}{l} {kind:?}");
                        let est = index_of(&alg, 1, COEFF_BOUND, 900 + i as u64).unwrap();
                        let m = form_matrix(&alg, &est.witness).unwrap();
                        assert!(m.is_antisymmetric());
                        assert_eq!(m.rank() % 2, 0);
                    }
                }
            }
        }

        // every enumerated peeling at rank ≤ 4 satisfies the structural
        // invariants, including |E| = length + 2t and the block-pairing rules
        for (t, ranks) in [
            (TypeLabel::A, 1..=4),
            (TypeLabel::B, 2..=4),
            (TypeLabel::C, 3..=4),
            (TypeLabel::D, 4..=4),
            (TypeLabel::F, 4..=4),
            (TypeLabel::G, 2..=2),
        ] {
            for l in ranks {
                let rs = system(t, l);
                for ideal in enumerate_ideals(&rs) {
                    let e = ideal.complement();
                    let (seqs, complete) = enumerate_hsequences(&rs, &e, BUDGET).unwrap();
                    assert!(complete, "{t}{l} enumeration must be exhaustive");
                    for h in &seqs {
                        h.verify_invariants(&rs, &e).unwrap();
                        assert_eq!(e.card(), h.len() + 2 * h.t());
                    }
                }
            }
        }

        // changing the structure-constant sign convention moves no index
        for (t, l) in [(TypeLabel::A, 3), (TypeLabel::B, 3), (TypeLabel::G, 2)] {
            let rs = system(t, l);
            for (i, ideal) in enumerate_ideals(&rs).into_iter().enumerate().step_by(3) {
                let mut values = Vec::new();
                for conv in [Convention::Plus, Convention::Minus] {
                    let nc = rs.chevalley_constants(conv);
                    let q = build_quotient(&rs, ideal.phi(), QuotientKind::BorelQuotient, &nc)
                        .unwrap();
                    values.push(index_of(&q, 4, COEFF_BOUND, 90 + i as u64).unwrap().value);
                }
                assert_eq!(values[0], values[1], "{t}{l}");
            }
        }

        // the two ideal characterizations agree by brute force at rank ≤ 3
        for (t, l) in [
            (TypeLabel::A, 1),
            (TypeLabel::A, 2),
            (TypeLabel::A, 3),
            (TypeLabel::B, 2),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::G, 2),
        ] {
            let rs = system(t, l);
            let n = rs.num_positive_roots();
            let mut closed = 0u64;
            for mask in 0u128..(1u128 << n) {
                let s = RootSubset::from_indices(
                    &rs,
                    &(0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>(),
                );
                let a = is_upper_set(&rs, &s);
                let b = is_ad_nilpotent_ideal(&rs, &s);
                assert_eq!(a, b, "{t}{l} mask {mask:b}");
                closed += a as u64;
            }
            assert_eq!(closed, enumerate_ideals(&rs).len() as u64, "{t}{l}");
        }
    });
}

#[test]
fn a10_conjecture_sweep_over_non_interval_types() {
    criterion(10, "checked sweep across all non-interval types of rank ≤ 4", || {
        let cases = [
            ("B", 2, 6usize),
            ("B", 3, 20),
            ("B", 4, 70),
            ("C", 3, 20),
            ("C", 4, 70),
            ("D", 4, 50),
            ("F", 4, 105),
            ("G", 2, 8),
        ];
        for (t, r, count) in cases {
            let path = std::env::temp_dir().join(format!(
                "borel-index-acceptance-{}-{}{}.jsonl",
                std::process::id(),
                t,
                r
            ));
            std::fs::remove_file(&path).ok();
            let out = std::process::Command::new(env!("CARGO_BIN_EXE_borel-index"))
                .env_remove("BOREL_INDEX_SEED")
                .args([
                    "sweep",
                    "--type",
                    t,
                    "--rank",
                    &r.to_string(),
                    "--check",
                    "--out",
                    path.to_str().unwrap(),
                ])
                .output()
                .unwrap();
            let code = out.status.code();
            assert!(
                code == Some(0) || code == Some(2),
                "{t}{r}: sweep must finish; stderr: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            let text = std::fs::read_to_string(&path).unwrap();
            let records: Vec<Value> = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| serde_json::from_str(l).unwrap())
                .collect();
            assert_eq!(records.len(), count, "{t}{r} catalog size");
            for rec in &records {
                // the bound inequalities hold in every record (the binary
                // aborts otherwise); restate the key one here
                if rec["min_c_exhaustive"] == true {
                    assert!(
                        rec["chi_q"]["value"].as_i64().unwrap()
                            <= rec["min_c"].as_i64().unwrap()
                    );
                }
            }
            if code == Some(2) {
                // a counterexample is a reportable finding, not a failure
                for rec in records.iter().filter(|r| {
                    r["conjecture_ok"] == false && r["min_c_exhaustive"] == true
                }) {
                    println!(
                        "FINDING: {}{} ideal {} has index {} < bound {}",
                        t, r, rec["ideal_generators"], rec["chi_q"]["value"], rec["min_c"]
                    );
                }
            } else {
                assert!(records.iter().all(|r| r["conjecture_ok"] == true), "{t}{r}");
            }
            std::fs::remove_file(&path).ok();
        }
    });
}
