mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn verifier_matches_full_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut passes = 0;
    for trial in 0..200 {
        let inst = common::random_instance(&mut rng, 8, 3);
        if let Err(e) = common::check_instance(&inst) {
            panic!("instance {trial} (n = {}, rows = {:?}): {e}", inst.n, inst.rows);
        }
        let opts = cws_graph::cws::VerifyOptions::default();
        passes += cws_graph::cws::verify_distance(&inst.code, 1, &opts).unwrap().passed() as usize;
    }
    // both verdicts occur in the sample
    assert!(passes > 0 && passes < 200, "{passes} passes at m = 1");
}

#[test]
fn ordering_counts_match_closed_form() {
    for n in 1..=6 {
        for m in 1..=3 {
            let expected = cws_graph::cws::error_count(n, m);
            assert_eq!(common::ordered_words(n, m).len() as u128, expected);
        }
    }
}
