//! The reference implementations on known values, plus cross-checks on
//! corpora the acceptance suite does not cover.

mod common;

use common::*;
use pathway_assembly::graphs::graph_assembly_index;
use pathway_assembly::strings::{str_from_bytes, string_assembly_index, TextSystem};
use pathway_assembly::SearchConfig;

#[test]
fn chain_oracle_known_values() {
    // Shortest addition chain lengths for n = 1..20.
    let known = [0, 1, 2, 2, 3, 3, 4, 3, 4, 4, 5, 4, 5, 5, 5, 4, 5, 5, 6, 5];
    assert_eq!(&chain_lengths_bfs(20)[1..], &known);
}

#[test]
fn string_oracle_known_values() {
    for (s, want) in [("a", 0), ("ab", 1), ("aaaa", 2), ("abab", 2), ("abcd", 3), ("aaaaaaaa", 3), ("abcabc", 3)] {
        assert_eq!(string_index_oracle(b"abcd", s.as_bytes()), want, "{s}");
    }
}

#[test]
fn graph_oracle_known_values() {
    let keys = all_small_graphs(3);
    // Two colours: 2 one-node graphs, 6 two-node, and 20 three-node classes.
    assert_eq!(keys.len(), 2 + 6 + 20);
    let idx = small_graph_indices(&keys);
    for k in keys {
        let g = SmallGraph::unpack(k);
        let n = g.colours.len();
        let want = match n {
            1 => 0,
            2 => 1,
            _ => 2,
        };
        assert_eq!(idx[&k], want, "{g:?}");
    }
}

#[test]
fn group_oracle_known_values() {
    let z = |n: usize| -> Vec<Vec<usize>> { (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect() };
    assert_eq!(group_index_oracle(&z(5), &[1], &[4]), Some(2));
    assert_eq!(group_index_oracle(&z(8), &[1], &[4]), Some(2));
    assert_eq!(group_index_oracle(&z(5), &[1], &[1]), Some(0));
    assert_eq!(group_index_oracle(&z(4), &[2], &[1]), None);
}

#[test]
fn four_letter_strings_match_the_oracle() {
    let table = string_oracle_table(b"abcd", 5);
    let cfg = SearchConfig::default();
    for (s, &want) in &table {
        let t = str_from_bytes(s);
        let sys = TextSystem::for_text(&t, false).unwrap();
        assert_eq!(string_assembly_index(&sys, &t, &cfg).unwrap().index, want, "{}", String::from_utf8_lossy(s));
    }
}

#[test]
fn one_colour_graphs_match_the_oracle() {
    let keys: Vec<SmallKey> = all_small_graphs(5)
        .into_iter()
        .filter(|&k| SmallGraph::unpack(k).colours.iter().all(|&c| c == 0))
        .collect();
    // Unlabelled graphs on 1..=5 nodes.
    assert_eq!(keys.len(), 1 + 2 + 4 + 11 + 34);
    let idx = small_graph_indices(&keys);
    for k in keys {
        let g = SmallGraph::unpack(k).to_coloured();
        assert_eq!(graph_assembly_index(&g, &SearchConfig::default()).unwrap().index, idx[&k], "{g:?}");
    }
}
