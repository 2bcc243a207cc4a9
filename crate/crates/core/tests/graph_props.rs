mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use common::{arb_dag, arb_demand, arb_network, ff_max_flow};
use twosink::augment::{build_augmented, check_lemma, LemmaIdentity};
use twosink::cli::files::NetworkFile;
use twosink::fixtures::{edge_between, fig2};
use twosink::netgraph::expand_capacities;
use twosink::{check_feasibility, Demand, EdgeId, Network, NetworkBuilder};

fn edge_multiset(net: &Network) -> BTreeMap<(String, String), usize> {
    let mut m = BTreeMap::new();
    for e in net.edges() {
        *m.entry((net.label(e.tail).to_string(), net.label(e.head).to_string())).or_default() += 1;
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansion_preserves_capacities(caps in proptest::collection::vec((0u8..5, 0u8..5, 1i64..6), 0..10)) {
        let unit = expand_capacities(&caps).unwrap();
        let mut want: BTreeMap<(u8, u8), i64> = BTreeMap::new();
        for &(a, b, c) in &caps {
            *want.entry((a, b)).or_default() += c;
        }
        let mut got: BTreeMap<(u8, u8), i64> = BTreeMap::new();
        for e in &unit {
            *got.entry((e.tail, e.head)).or_default() += 1;
        }
        prop_assert_eq!(got, want);
        let ids: BTreeSet<EdgeId> = unit.iter().map(|e| e.id).collect();
        prop_assert_eq!(ids.len(), unit.len());
    }

    #[test]
    fn removal_composes(net in arb_network(), mask in any::<u32>()) {
        let ids: Vec<EdgeId> = net.edges().map(|e| e.id).collect();
        let (a, b): (Vec<_>, Vec<_>) = ids.iter().enumerate().partition(|(i, _)| mask >> (i % 32) & 1 == 1);
        let a: BTreeSet<EdgeId> = a.into_iter().map(|(_, &e)| e).take(ids.len() / 2).collect();
        let b: BTreeSet<EdgeId> = b.into_iter().map(|(_, &e)| e).collect();
        let both: BTreeSet<EdgeId> = a.union(&b).copied().collect();
        let once = net.remove_edges(&both).unwrap();
        let twice = net.remove_edges(&a).unwrap().remove_edges(&b).unwrap();
        prop_assert_eq!(once, twice);
        prop_assert_eq!(net.remove_edges(&BTreeSet::new()).unwrap(), net.clone());
    }

    #[test]
    fn file_round_trip(net in arb_network()) {
        let text = NetworkFile::from_network(&net).to_json();
        let back = NetworkFile::from_json(&text).unwrap().to_network().unwrap();
        prop_assert_eq!(edge_multiset(&back), edge_multiset(&net));
        prop_assert_eq!(back.label(back.source()), net.label(net.source()));
        let labels = |n: &Network| n.terminals().map(|t| n.label(t).to_string());
        prop_assert_eq!(labels(&back), labels(&net));
    }

    #[test]
    fn lemma_holds_when_feasible(net in arb_dag(), pick in any::<prop::sample::Index>()) {
        let feasible: Vec<Demand> =
            Demand::all_up_to(4).into_iter().filter(|&d| check_feasibility(&net, d).unwrap().feasible).collect();
        let d = *pick.get(&feasible);
        let aug = build_augmented(&net, d).unwrap();
        let r = check_lemma(&aug, d).unwrap();
        prop_assert!(r.satisfied(), "{:?}", r);
        prop_assert_eq!(r.t1p, d.first());
        prop_assert_eq!(r.t2p, d.second());
        prop_assert!(r.both >= d.total());
        prop_assert_eq!(r.y1, d.total());
        prop_assert_eq!(r.y2, d.total());
    }

    #[test]
    fn virtual_terminal_caps_the_cut(net in arb_network(), d in arb_demand()) {
        let aug = build_augmented(&net, d).unwrap();
        let s = aug.net.source();
        prop_assert!(ff_max_flow(&aug.net, s, &[aug.t1p]) <= d.first());
        prop_assert!(ff_max_flow(&aug.net, s, &[aug.t2p]) <= d.second());
        prop_assert_eq!(aug.net.node_count(), net.node_count() + 4);
        let extra = 2 * d.first() + d.h1 + 2 * d.second() + d.h2;
        prop_assert_eq!(aug.net.edge_count(), net.edge_count() + extra as usize);
        prop_assert_eq!(aug.virtual_edge_ids.len(), extra as usize);
    }
}

#[test]
fn fig2_source_out_edges() {
    let net = fig2();
    let outs = net.out_edges(net.source()).unwrap();
    let want: Vec<EdgeId> =
        ["6", "2", "3", "7"].iter().map(|h| edge_between(&net, "1", h).unwrap()).collect();
    assert_eq!(outs, want.as_slice());
}

#[test]
fn parallel_out_edges_are_distinct() {
    let mut b = NetworkBuilder::new();
    let [s, t1, t2, x] = ["s", "t1", "t2", "x"].map(|l| b.node(l));
    let ids = b.edges(s, t1, 2).unwrap();
    let net = b.build(s, [t1, t2]).unwrap();
    assert_eq!(net.out_edges(s).unwrap(), ids.as_slice());
    assert_ne!(ids[0], ids[1]);
    assert!(net.out_edges(x).unwrap().is_empty());
}

#[test]
fn expansion_examples() {
    assert_eq!(expand_capacities(&[("a", "b", 3)]).unwrap().len(), 3);
    assert_eq!(expand_capacities(&[("a", "b", 1)]).unwrap().len(), 1);
    let d = Demand::new(2, 1, 0);
    assert_eq!(expand_capacities(&[("T1", "T1'", d.first() as i64)]).unwrap().len(), 3);
    assert!(expand_capacities(&[("a", "b", 0)]).is_err());
}

#[test]
fn augmentation_examples() {
    let net = fig2();
    let aug = build_augmented(&net, Demand::new(2, 1, 1)).unwrap();
    assert_eq!(aug.net.in_edges(aug.y1).unwrap().len(), 4);
    assert_eq!(aug.net.in_edges(aug.t1p).unwrap().len(), 3);
    let bundle = |a, b| aug.net.edges().filter(|e| e.tail == a && e.head == b).count();
    assert_eq!(bundle(aug.t2p, aug.y1), 1);

    let aug = build_augmented(&net, Demand::new(0, 0, 0)).unwrap();
    assert!(aug.net.in_edges(aug.y1).unwrap().is_empty());
    assert!(aug.net.in_edges(aug.y2).unwrap().is_empty());
    assert_eq!(aug.net.edge_count(), net.edge_count());

    let aug = build_augmented(&net, Demand::new(1, 0, 2)).unwrap();
    let bundle = |a, b| aug.net.edges().filter(|e| e.tail == a && e.head == b).count();
    assert_eq!(bundle(aug.t1p, aug.y2), 0);
    assert_eq!(bundle(aug.t2p, aug.y1), 2);
}

#[test]
fn fig2_lemma_values() {
    let d = Demand::new(2, 1, 1);
    let r = check_lemma(&build_augmented(&fig2(), d).unwrap(), d).unwrap();
    assert_eq!((r.t1p, r.t2p, r.y1, r.y2), (3, 3, 4, 4));
    assert!(r.both >= 4);
    assert!(r.satisfied());

    let zero = Demand::new(0, 0, 0);
    let r = check_lemma(&build_augmented(&fig2(), zero).unwrap(), zero).unwrap();
    assert_eq!(r.values(), [0; 5]);
    assert!(r.satisfied());
}

#[test]
fn surplus_capacity_is_hidden_by_the_virtual_bottleneck() {
    let mut b = NetworkBuilder::new();
    let [s, t1, t2] = ["s", "t1", "t2"].map(|l| b.node(l));
    b.edges(s, t1, 7).unwrap();
    b.edges(s, t2, 1).unwrap();
    let net = b.build(s, [t1, t2]).unwrap();
    let d = Demand::new(1, 1, 0);
    let r = check_lemma(&build_augmented(&net, d).unwrap(), d).unwrap();
    assert_eq!(r.t1p, 2);
}

#[test]
fn infeasible_demand_shows_deviations() {
    let d = Demand::new(2, 2, 1);
    let r = check_lemma(&build_augmented(&fig2(), d).unwrap(), d).unwrap();
    assert!(!r.satisfied());
    assert!(r.deviations.contains(&LemmaIdentity::FirstPrime));
}
