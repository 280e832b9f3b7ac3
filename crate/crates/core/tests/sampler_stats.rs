use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use multiedge::counting::{a_n, HeightCountTable, VertexCountTable};
use multiedge::numeric::chi_square_gof;
use multiedge::sampler::Sampler;
use multiedge::trees::Enumerator;

#[test]
fn leaves_match_exhaustive_distribution() {
    let n = 9;
    let mut exact: BTreeMap<usize, u64> = BTreeMap::new();
    let total = Enumerator::default()
        .multi_edge(n, |t| *exact.entry(t.stats().leaves).or_default() += 1)
        .unwrap()
        .to_f64()
        .unwrap();
    let max = *exact.keys().last().unwrap();
    let probs: Vec<f64> = (0..=max)
        .map(|l| exact.get(&l).copied().unwrap_or(0) as f64 / total)
        .collect();

    let mut observed = vec![0u64; max + 1];
    let mut sampler = Sampler::new(n, 2024);
    for _ in 0..50_000 {
        observed[sampler.sample().stats().leaves] += 1;
    }
    let test = chi_square_gof(&observed, &probs);
    assert!(test.passes(0.001), "{test:?}");
}

#[test]
fn vertices_and_heights_at_moderate_size() {
    let n = 40;
    let total = a_n(n).to_f64().unwrap();
    let v = VertexCountTable::new(n);
    let h = HeightCountTable::by_formula(n);
    let v_p: Vec<f64> = (0..=n + 1)
        .map(|k| v.count(k).to_f64().unwrap() / total)
        .collect();
    let h_p: Vec<f64> = (0..=n)
        .map(|k| h.count_eq(k).to_f64().unwrap() / total)
        .collect();

    let mut v_obs = vec![0u64; n + 2];
    let mut h_obs = vec![0u64; n + 1];
    let mut sampler = Sampler::new(n, 77);
    for _ in 0..20_000 {
        let s = sampler.sample().stats();
        v_obs[s.vertices] += 1;
        h_obs[s.height] += 1;
    }
    let tv = chi_square_gof(&v_obs, &v_p);
    let th = chi_square_gof(&h_obs, &h_p);
    assert!(tv.passes(0.001), "{tv:?}");
    assert!(th.passes(0.001), "{th:?}");
}

#[test]
fn every_tree_of_size_four_is_reachable() {
    let mut seen = std::collections::HashSet::new();
    let mut sampler = Sampler::new(4, 5);
    for _ in 0..5_000 {
        seen.insert(sampler.sample());
    }
    assert_eq!(seen.len(), 36);
}
