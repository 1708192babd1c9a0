//! Cross-validation of the zigzag engine against an independent
//! linear-algebra oracle: full interval multisets, not just Betti counts.

mod common;

use common::{
    engine_intervals, loop_rerouting_fixtures, oracle_intervals, random_direct_zigzag,
    random_temporal_graph, Lcg,
};
use ziggraph::windowing::{build_snapshots, make_plan};
use ziggraph::zigzag::{build_zigzag, zigzag_persistence, ZigzagSequence};

fn assert_matches_oracle(zz: &ZigzagSequence, label: &str) {
    let diagram = zigzag_persistence(zz, 1).expect("engine runs");
    for p in 0..=1 {
        let want = oracle_intervals(zz, p);
        let got = engine_intervals(&diagram, p);
        assert_eq!(got, want, "{label}: interval multiset mismatch in H{p}");
    }
}

#[test]
fn background_fixture_matches_oracle() {
    let cx = |gens: &[&[u32]]| {
        ziggraph::complex::SimplicialComplex::from_simplices(
            gens.iter().map(|s| s.to_vec()),
            2,
        )
        .unwrap()
    };
    let k0 = cx(&[&[0], &[1]]);
    let k01 = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
    let k1 = cx(&[&[0, 1], &[1, 2]]);
    let zz = ZigzagSequence::new(
        vec![k0, k01, k1.clone(), k1.clone(), k1],
        vec![0.0, 0.5, 1.0, 1.5, 2.0],
        2.5,
    )
    .unwrap();
    assert_matches_oracle(&zz, "background");
}

#[test]
fn loop_fixtures_match_oracle_and_expected_counts() {
    for (i, (zz, expected_h1)) in loop_rerouting_fixtures().into_iter().enumerate() {
        let diagram = zigzag_persistence(&zz, 1).expect("engine runs");
        let count = diagram.pairs_in_dim(1).count();
        assert_eq!(count, expected_h1, "fixture {i}: H1 interval count");
        assert_matches_oracle(&zz, &format!("loop fixture {i}"));
    }
}

#[test]
fn random_direct_zigzags_match_oracle() {
    let mut rng = Lcg(0x5eed_0001);
    for case in 0..150 {
        let snapshots = 2 + (case % 4);
        let zz = random_direct_zigzag(&mut rng, snapshots, 6);
        assert_matches_oracle(&zz, &format!("direct case {case}"));
    }
}

#[test]
fn random_temporal_pipelines_match_oracle() {
    let mut rng = Lcg(0x5eed_0002);
    for case in 0..150 {
        let g = random_temporal_graph(&mut rng, 8);
        let width = 1.0 + rng.uniform() * 3.0;
        let overlap = [0.0, 0.25, 0.5][(case % 3) as usize];
        let plan = make_plan(g.time_domain(), width, overlap).unwrap();
        if plan.len() > 8 {
            continue;
        }
        let seq = build_snapshots(&g, &plan);
        let zz = build_zigzag(&seq, 1, 2).unwrap();
        assert_matches_oracle(&zz, &format!("pipeline case {case}"));
    }
}

#[test]
fn reversal_preserves_interval_lengths() {
    let mut rng = Lcg(0x5eed_0003);
    for case in 0..60 {
        let zz = random_direct_zigzag(&mut rng, 3, 5);
        let m = zz.position_count();
        let reversed: Vec<_> = zz.complexes().iter().rev().cloned().collect();
        let labels: Vec<f64> = (0..m).map(|i| i as f64).collect();
        let rev = ZigzagSequence::new(reversed, labels, m as f64).unwrap();

        let fwd_diagram = zigzag_persistence(&zz, 1).unwrap();
        let rev_diagram = zigzag_persistence(&rev, 1).unwrap();
        for p in 0..=1 {
            let mut fwd_lengths: Vec<usize> = fwd_diagram
                .pairs_in_dim(p)
                .map(|pair| pair.death_position - pair.birth_position)
                .collect();
            let mut rev_lengths: Vec<usize> = rev_diagram
                .pairs_in_dim(p)
                .map(|pair| pair.death_position - pair.birth_position)
                .collect();
            fwd_lengths.sort_unstable();
            rev_lengths.sort_unstable();
            assert_eq!(fwd_lengths, rev_lengths, "case {case} dim {p}");
        }
    }
}
