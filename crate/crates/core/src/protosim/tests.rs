use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::cws::{assemble, CwsCode};
use crate::f2core::PauliWord;
use crate::graphstate::Graph;
use crate::tentpeg::LinearCode;

const EPS: f64 = 1e-10;

/// `Z_v |G⟩` from the closed form `G[z] = (-1)^{|E(z)|} / 2^{n/2}`.
fn oracle_shifted_graph(g: &Graph, v: usize) -> Vec<Complex64> {
    let n = g.n();
    let edges = g.edges();
    let a = (1.0 / (1u64 << n) as f64).sqrt();
    (0..1usize << n)
        .map(|z| {
            let inside = edges
                .iter()
                .filter(|&&(p, q)| z >> p & 1 == 1 && z >> q & 1 == 1)
                .count();
            let parity = inside + (z & v).count_ones() as usize;
            Complex64::new(if parity.is_multiple_of(2) { a } else { -a }, 0.0)
        })
        .collect()
}

fn row_mask(code: &CwsCode, i: usize) -> usize {
    code.generator().row(i).iter_ones().fold(0, |m, t| m | 1 << t)
}

/// `Σ_x a_x Z_{xA} |G⟩` by explicit amplitude arithmetic.
fn oracle_encoded(code: &CwsCode, logical: &StateVector) -> StateVector {
    let n = code.n();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (x, &ax) in logical.amplitudes().iter().enumerate() {
        let v = (0..code.k())
            .filter(|i| x >> i & 1 == 1)
            .fold(0, |m, i| m ^ row_mask(code, i));
        for (out, b) in amps.iter_mut().zip(oracle_shifted_graph(code.graph(), v)) {
            *out += ax * b;
        }
    }
    StateVector::from_amplitudes(amps).unwrap()
}

fn c5() -> CwsCode {
    assemble(Graph::cycle(5).unwrap(), LinearCode::repetition(5)).unwrap()
}

fn p4_k2() -> CwsCode {
    assemble(
        Graph::path(4),
        LinearCode::from_row_strings(&["1100", "0111"], 4).unwrap(),
    )
    .unwrap()
}

fn lattice_k3() -> CwsCode {
    let rows = ["110100100", "011010011", "100111010"];
    assemble(
        Graph::lattice(&[3, 3]).unwrap(),
        LinearCode::from_row_strings(&rows, 9).unwrap(),
    )
    .unwrap()
}

fn forced(bits: usize, len: usize) -> Outcomes {
    Outcomes::forced((0..len).map(|i| bits >> i & 1 == 1).collect())
}

fn schedules() -> [SimOptions; 2] {
    [
        SimOptions::default(),
        SimOptions {
            schedule: CorrectionSchedule::Deferred,
            ..Default::default()
        },
    ]
}

#[test]
fn graph_state_matches_closed_form() {
    for g in [
        Graph::cycle(5).unwrap(),
        Graph::path(4),
        Graph::lattice(&[3, 3]).unwrap(),
        Graph::complete(4),
    ] {
        let s = prepare_graph_state(&g).unwrap();
        let oracle = StateVector::from_amplitudes(oracle_shifted_graph(&g, 0)).unwrap();
        assert!((s.fidelity(&oracle) - 1.0).abs() < EPS);
        assert!((s.inner(&oracle).re - 1.0).abs() < EPS, "same global phase");
        for sg in crate::graphstate::stabilizer_generators(&g).as_slice() {
            assert!((s.expectation(sg, 0) - 1.0).abs() < EPS);
        }
    }
}

#[test]
fn code_state_matches_oracle() {
    let code = lattice_k3();
    let logical = StateVector::random_seeded(3, 5);
    let built = code_state(&code, &logical).unwrap();
    assert!((built.inner(&oracle_encoded(&code, &logical)).re - 1.0).abs() < EPS);
    assert!((codespace_weight(&code, &built).unwrap() - 1.0).abs() < EPS);
}

#[test]
fn encode_is_outcome_independent() {
    for code in [c5(), p4_k2(), lattice_k3()] {
        let k = code.k();
        let logical = StateVector::random_seeded(k, 11);
        let target = oracle_encoded(&code, &logical);
        for opts in schedules() {
            for bits in 0..1usize << k {
                let (enc, t) = encode(&code, &logical, &mut forced(bits, k), &opts).unwrap();
                assert!((enc.fidelity(&target) - 1.0).abs() < EPS, "branch {bits:b}");
                assert_eq!(t.corrections.len(), bits.count_ones() as usize);
                assert!(t.corrections.iter().all(|c| t.outcomes[c.outcome] == 1));
            }
        }
    }
}

#[test]
fn encode_corrections_are_pivot_stabilizers() {
    let code = lattice_k3();
    let (_, t) = encode(
        &code,
        &StateVector::plus(3),
        &mut forced(0b101, 3),
        &SimOptions::default(),
    )
    .unwrap();
    let sg = code.stabilizer_generators();
    assert_eq!(t.corrections[0].physical, *sg.get(code.pivot(0)));
    assert_eq!(t.corrections[1].physical, *sg.get(code.pivot(2)));
}

#[test]
fn recover_every_branch() {
    for code in [c5(), p4_k2(), lattice_k3()] {
        let (n, k) = (code.n(), code.k());
        let logical = StateVector::random_seeded(k, 3);
        let encoded = oracle_encoded(&code, &logical);
        let graph = StateVector::from_amplitudes(oracle_shifted_graph(code.graph(), 0)).unwrap();
        for opts in schedules() {
            let mut possible = 0;
            for bits in 0..1usize << n {
                match recover(&code, &encoded, &mut forced(bits, n), &opts) {
                    Ok((rec, phys, t)) => {
                        possible += 1;
                        assert!((rec.fidelity(&logical) - 1.0).abs() < EPS);
                        assert!((phys.fidelity(&graph) - 1.0).abs() < EPS);
                        assert_eq!(t.corrections.len(), bits.count_ones() as usize);
                    }
                    Err(SimError::ImpossibleOutcome { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
            // syndromes are exactly the codewords cA
            assert_eq!(possible, 1 << k);
        }
        let proj = SimOptions {
            route: RecoveryRoute::Projector,
            ..Default::default()
        };
        let (rec, _, t) = recover(&code, &encoded, &mut Outcomes::forced(vec![]), &proj).unwrap();
        assert!((rec.fidelity(&logical) - 1.0).abs() < EPS);
        assert!(t.outcomes.is_empty());
    }
}

#[test]
fn recover_rejects_states_outside_code() {
    let code = c5();
    let off = StateVector::random_seeded(5, 9);
    let err = recover(&code, &off, &mut Outcomes::seeded(1), &SimOptions::default()).unwrap_err();
    assert!(matches!(err, SimError::NotInCodespace { .. }));
}

#[test]
fn round_trip_seeded() {
    let code = lattice_k3();
    for seed in 0..8 {
        let logical = StateVector::random_seeded(3, 100 + seed);
        let mut o = Outcomes::seeded(seed);
        let (enc, t1) = encode(&code, &logical, &mut o, &SimOptions::default()).unwrap();
        let (rec, _, t2) = recover(&code, &enc, &mut o, &SimOptions::default()).unwrap();
        assert!((rec.fidelity(&logical) - 1.0).abs() < EPS);
        assert_eq!(t1.seed, Some(seed));
        assert_eq!(t2.outcomes.len(), 9);
    }
}

#[test]
fn encoding_is_linear() {
    let code = p4_k2();
    let (psi, phi) = (StateVector::random_seeded(2, 1), StateVector::random_seeded(2, 2));
    let (a, b) = (Complex64::new(0.6, 0.2), Complex64::new(-0.3, 0.7));
    let mut mix = psi.clone();
    mix.scale(a);
    mix.add_scaled(b, &phi);
    let norm = mix.norm();
    mix.normalize();
    let opts = SimOptions::default();
    let run = |s: &StateVector| encode(&code, s, &mut forced(0b10, 2), &opts).unwrap().0;
    let mut expected = run(&psi);
    expected.scale(a / norm);
    expected.add_scaled(b / norm, &run(&phi));
    assert!((run(&mix).inner(&expected).re - 1.0).abs() < EPS);
}

#[test]
fn sequential_equals_direct() {
    let code = lattice_k3();
    for split in 1..3 {
        let low = StateVector::random_seeded(split, 7);
        let high = StateVector::random_seeded(3 - split, 8);
        let logical = StateVector::kron(&high, &low);
        let target = oracle_encoded(&code, &logical);
        for bits in 0..8 {
            let (enc, t) =
                encode_sequential(&code, &logical, split, &mut forced(bits, 3), &SimOptions::default()).unwrap();
            assert!((enc.fidelity(&target) - 1.0).abs() < EPS);
            assert_eq!(t.corrections.len(), bits.count_ones() as usize);
        }
    }
    let ghz = StateVector::from_amplitudes(
        (0..8)
            .map(|i| Complex64::new(if i == 0 || i == 7 { 1.0 } else { 0.0 }, 0.0))
            .collect(),
    )
    .unwrap();
    let err = encode_sequential(&code, &ghz, 2, &mut Outcomes::seeded(0), &SimOptions::default()).unwrap_err();
    assert_eq!(err, SimError::NotProductState { split: 2 });
    assert!(matches!(
        encode_sequential(&code, &ghz, 3, &mut Outcomes::seeded(0), &SimOptions::default()),
        Err(SimError::BadSplit { .. })
    ));
}

#[test]
fn partial_recovery_leaves_residual_code_state() {
    let code = lattice_k3();
    for which in 0..3 {
        let q = StateVector::random_seeded(1, 20 + which as u64);
        let rest = StateVector::random_seeded(2, 30 + which as u64);
        // logical qubit `which` carries q, the other two carry rest in order
        let joint = StateVector::kron(&q, &rest);
        // logical qubit `which` takes joint qubit 2, the others take 0 and 1
        let others: Vec<usize> = (0..3).filter(|&i| i != which).collect();
        let mut order = vec![2; 3];
        order[others[0]] = 0;
        order[others[1]] = 1;
        let logical = joint.permute_qubits(&order);
        let encoded = oracle_encoded(&code, &logical);
        for bit in 0..2 {
            let (rec, residual, t) =
                partial_recover(&code, &encoded, which, &mut forced(bit, 1), &SimOptions::default()).unwrap();
            assert!((rec.fidelity(&q) - 1.0).abs() < EPS);
            // residual = Σ a_x' Z_{x'A'}|G⟩ over the other rows
            let mut expected = vec![Complex64::new(0.0, 0.0); 1 << code.n()];
            for (x, &ax) in rest.amplitudes().iter().enumerate() {
                let v = (0..2)
                    .filter(|j| x >> j & 1 == 1)
                    .fold(0, |m, j| m ^ row_mask(&code, others[j]));
                for (e, b) in expected.iter_mut().zip(oracle_shifted_graph(code.graph(), v)) {
                    *e += ax * b;
                }
            }
            let expected = StateVector::from_amplitudes(expected).unwrap();
            assert!((residual.fidelity(&expected) - 1.0).abs() < EPS);
            assert_eq!(t.corrections.len(), bit);
        }
    }
}

#[test]
fn permute_qubits_moves_bits() {
    let s = StateVector::basis(3, 0b001);
    // new qubit i takes old qubit order[i]
    let moved = s.permute_qubits(&[1, 2, 0]);
    assert_eq!(moved.amplitude(0b100), Complex64::new(1.0, 0.0));
}

#[test]
fn partial_recovery_of_entangled_payload_is_not_separable() {
    let code = p4_k2();
    let bell = StateVector::from_amplitudes(vec![1.0.into(), 0.0.into(), 0.0.into(), 1.0.into()]).unwrap();
    let encoded = oracle_encoded(&code, &bell);
    let err = partial_recover(&code, &encoded, 1, &mut Outcomes::seeded(4), &SimOptions::default()).unwrap_err();
    assert!(matches!(err, SimError::NotSeparable { .. }));
    assert!(matches!(
        partial_recover(&code, &encoded, 2, &mut Outcomes::seeded(4), &SimOptions::default()),
        Err(SimError::IndexOutOfRange { .. })
    ));
}

/// `S_T Z_A` with phase dropped.
fn u_for(code: &CwsCode, t: &[usize]) -> PauliWord {
    let mut u = code.stabilizer_generators().product(t);
    let za = PauliWord::new(
        crate::f2core::F2Vector::zeros(code.n()),
        code.generator().row(0).clone(),
    )
    .unwrap();
    u.mul_assign(&za);
    u
}

#[test]
fn controlled_u_recovery() {
    let code = c5();
    // T = {0}: |T ∩ A| odd; T = {0, 1}: even
    for t in [vec![0], vec![0, 1], vec![1, 3, 4]] {
        let u = u_for(&code, &t);
        for seed in 0..4 {
            let logical = StateVector::random_seeded(1, 40 + seed);
            let encoded = oracle_encoded(&code, &logical);
            for opts in schedules() {
                for bits in 0..32 {
                    match recover_controlled_u(&code, &encoded, &u, &mut forced(bits, 5), &opts) {
                        Ok((q, tr)) => {
                            assert!((q.fidelity(&logical) - 1.0).abs() < EPS, "T={t:?} branch {bits:05b}");
                            assert_eq!(tr.corrections.len(), bits.count_ones() as usize);
                        }
                        Err(SimError::ImpossibleOutcome { .. }) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
    assert_eq!(u_for(&code, &[0]).weight(), 3);
}

#[test]
fn controlled_u_precondition() {
    let code = c5();
    let encoded = oracle_encoded(&code, &StateVector::plus(1));
    // a graph stabilizer itself fails: U Z_A would be S_T Z_A, not in S
    let s0 = code.stabilizer_generators().get(0).clone();
    let err = recover_controlled_u(&code, &encoded, &s0, &mut Outcomes::seeded(0), &SimOptions::default()).unwrap_err();
    assert_eq!(err, SimError::PreconditionUZA);
    let multi = p4_k2();
    let enc2 = oracle_encoded(&multi, &StateVector::plus(2));
    let u = PauliWord::identity(4);
    assert_eq!(
        recover_controlled_u(&multi, &enc2, &u, &mut Outcomes::seeded(0), &SimOptions::default()).unwrap_err(),
        SimError::NeedsSingleLogical(2)
    );
}

#[test]
fn valid_u_is_never_a_stabilizer() {
    // U Z_A ∈ S forces U ∉ S, since no nonzero pure-Z word is a graph stabilizer
    let code = c5();
    let sg = code.stabilizer_generators();
    for t in 0..32usize {
        let support: Vec<usize> = (0..5).filter(|i| t >> i & 1 == 1).collect();
        let u = u_for(&code, &support);
        let stab = sg.product_with_x(u.x_part());
        assert_ne!(u, stab);
    }
}

#[test]
fn size_limits() {
    let big = Graph::cycle(21).unwrap();
    assert!(matches!(
        prepare_graph_state(&big),
        Err(SimError::TooManyQubits { needed: 21, .. })
    ));
    let rows: Vec<String> = (0..3)
        .map(|i| format!("{}{}", "0".repeat(i), "1".repeat(20 - i)))
        .collect();
    let code = assemble(
        Graph::cycle(20).unwrap(),
        LinearCode::from_row_strings(&rows, 20).unwrap(),
    )
    .unwrap();
    let err = encode(
        &code,
        &StateVector::plus(3),
        &mut Outcomes::seeded(0),
        &SimOptions::default(),
    )
    .unwrap_err();
    assert_eq!(err, SimError::NeedsHeavy(23));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_codes_round_trip(edges in proptest::collection::vec((0usize..5, 0usize..5), 0..8),
                               rows in proptest::collection::vec(1usize..32, 1..3),
                               seed in 0u64..1000) {
        let edges: Vec<(usize, usize)> = edges.into_iter().filter(|(a, b)| a != b).collect();
        let g = Graph::from_edges(5, &edges).unwrap();
        let rows: Vec<String> = rows.iter().map(|r| (0..5).map(|i| if r >> i & 1 == 1 { '1' } else { '0' }).collect()).collect();
        let code = assemble(g, LinearCode::from_row_strings(&rows, 5).unwrap()).unwrap();
        let logical = StateVector::random_seeded(code.k(), seed);
        let mut o = Outcomes::seeded(seed);
        let (enc, _) = encode(&code, &logical, &mut o, &SimOptions::default()).unwrap();
        prop_assert!((enc.fidelity(&oracle_encoded(&code, &logical)) - 1.0).abs() < EPS);
        let (rec, _, _) = recover(&code, &enc, &mut o, &SimOptions::default()).unwrap();
        prop_assert!((rec.fidelity(&logical) - 1.0).abs() < EPS);
    }
}
