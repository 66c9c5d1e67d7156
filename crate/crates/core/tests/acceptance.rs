//! The acceptance suite: eight criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness; exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use pathway_assembly::chains::{optimal_chain_length, project_pathway_to_chain, validate_chain};
use pathway_assembly::compress::{lzw_compress, lzw_decompress, pa_compress, pa_decompress};
use pathway_assembly::graphs::{
    doubling_pathway, graph_assembly_index, graph_assembly_index_with_hint, GraphSystem,
};
use pathway_assembly::groups::{
    element_assembly_index, group_co_assembly_index, verify_group_axioms, FiniteGroup,
};
use pathway_assembly::strings::{string_assembly_index, TextSystem};
use pathway_assembly::{
    evaluate_measure, schonhage_lower_bound, validate_pathway, Algorithm, AssemblySystem, MeasureSpec, Pathway,
    SearchConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Co-assembly index of the two-generator S_3 regression case, from
/// `group_index_oracle` (one step per non-generator element).
const S3_CO_INDEX: usize = 4;

/// (object size, index) for every object checked against an oracle in
/// criterion 2; criterion 3 reuses them.
static CORPUS: OnceLock<Vec<(u64, usize)>> = OnceLock::new();

fn pathasm(args: &[&str]) -> Result<(Value, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_pathasm"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(out.status.success(), "pathasm {args:?} exited with {:?}", out.status);
    let v = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok((v, elapsed))
}

fn exact_integers_from_the_cli() -> Outcome {
    let mut notes = Vec::new();
    for (n, want) in [(128u64, 7u64), (127, 10)] {
        let (v, t) = pathasm(&["chain", &n.to_string()])?;
        ensure!(v["l"] == want, "chain {n} reported {}, expected {want}", v["l"]);
        ensure!(t < Duration::from_secs(60), "chain {n} took {t:?}");
        notes.push(format!("l({n})={want} in {:.0} ms", t.as_secs_f64() * 1e3));
    }
    Ok(notes.join(", "))
}

fn oracle_equivalence() -> Outcome {
    let mut corpus = Vec::new();

    let bfs = chain_lengths_bfs(64);
    for n in 1..=64u64 {
        let r = optimal_chain_length(n).map_err(|e| e.to_string())?;
        ensure!(r.length == bfs[n as usize], "l({n}): {} vs oracle {}", r.length, bfs[n as usize]);
        ensure!(validate_chain(&r.chain, n), "l({n}): invalid witness {:?}", r.chain.values);
    }

    let cfg = SearchConfig::default();
    let table = string_oracle_table(b"abc", 8);
    let mut strings: Vec<&Vec<u8>> = table.keys().collect();
    strings.sort();
    for s in &strings {
        let text = pathway_assembly::strings::str_from_bytes(s);
        let sys = TextSystem::for_text(&text, false).map_err(|e| e.to_string())?;
        let r = string_assembly_index(&sys, &text, &cfg).map_err(|e| e.to_string())?;
        let want = table[*s];
        ensure!(r.index == want, "{}: index {} vs oracle {want}", String::from_utf8_lossy(s), r.index);
        corpus.push((s.len() as u64, r.index));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x0a11_ce5);
    for _ in 0..200 {
        let len = rng.gen_range(9..=12);
        let s: Vec<u8> = (0..len).map(|_| if rng.gen_bool(0.5) { b'a' } else { b'b' }).collect();
        let text = pathway_assembly::strings::str_from_bytes(&s);
        let sys = TextSystem::for_text(&text, false).map_err(|e| e.to_string())?;
        let r = string_assembly_index(&sys, &text, &cfg).map_err(|e| e.to_string())?;
        let want = string_index_oracle(b"ab", &s);
        ensure!(r.index == want, "{}: index {} vs oracle {want}", String::from_utf8_lossy(&s), r.index);
        corpus.push((len as u64, r.index));
    }

    let keys = all_small_graphs(5);
    let oracle = small_graph_indices(&keys);
    for &k in &keys {
        let g = SmallGraph::unpack(k).to_coloured();
        let r = graph_assembly_index(&g, &cfg).map_err(|e| e.to_string())?;
        ensure!(r.index == oracle[&k], "graph {g:?}: index {} vs oracle {}", r.index, oracle[&k]);
        corpus.push((g.node_count() as u64, r.index));
    }

    let counts = (strings.len(), 200, keys.len());
    CORPUS.set(corpus).ok();
    Ok(format!(
        "chains n<=64, {} strings (length <=8, 3 letters), {} random strings, {} graphs (<=5 nodes, 2 colours)",
        counts.0, counts.1, counts.2
    ))
}

fn bound_soundness() -> Outcome {
    for n in 1..=512u64 {
        let l = optimal_chain_length(n).map_err(|e| e.to_string())?.length;
        let b = schonhage_lower_bound(n) as usize;
        ensure!(b <= l, "bound {b} exceeds l({n}) = {l}");
    }
    let corpus = CORPUS.get().ok_or("criterion 2 did not produce its corpus")?;
    let mut chain = BTreeMap::new();
    for &(size, index) in corpus {
        let l = *chain
            .entry(size)
            .or_insert_with(|| optimal_chain_length(size).map(|r| r.length).unwrap_or(usize::MAX));
        ensure!(l <= index, "size {size}: l = {l} > index {index}");
        ensure!(index as u64 <= size - 1, "size {size}: index {index} > size - 1");
    }
    Ok(format!("n <= 512 and {} corpus objects, zero violations", corpus.len()))
}

fn doubling_laws() -> Outcome {
    let cfg = SearchConfig::default();
    for k in 0..=10u32 {
        let text = vec![b'a' as u32; 1 << k];
        let sys = TextSystem::for_text(&text, false).map_err(|e| e.to_string())?;
        let r = string_assembly_index(&sys, &text, &cfg).map_err(|e| e.to_string())?;
        ensure!(r.index == k as usize && r.exact, "a^{}: index {}", 1 << k, r.index);
    }
    for k in 0..=16u32 {
        let l = optimal_chain_length(1 << k).map_err(|e| e.to_string())?.length;
        ensure!(l == k as usize, "l(2^{k}) = {l}");
    }
    let (g, hint) = doubling_pathway(5, 0);
    let sys = GraphSystem::for_graph(&g);
    let r = graph_assembly_index_with_hint(&sys, &g, &cfg, &hint).map_err(|e| e.to_string())?;
    ensure!(r.index == 5 && r.exact, "5-fold doubled graph: index {} exact {}", r.index, r.exact);
    Ok("a^(2^k) has index k (k<=10), l(2^k)=k (k<=16), 32-node doubled graph index 5 exact".into())
}

fn chain_ok<S: AssemblySystem>(sys: &S, p: &Pathway<S::Object>) -> Result<(), String> {
    let report = validate_pathway(sys, p).map_err(|e| e.to_string())?;
    ensure!(report.valid, "generated pathway invalid: {report}");
    let mut measures = sys.measures();
    measures.push(MeasureSpec::unit(&sys.basis()));
    for m in &measures {
        let values = evaluate_measure(sys, m, p).map_err(|e| e.to_string())?;
        let target = values.last().copied().unwrap_or(0.0).round() as u64;
        if target == 0 {
            continue;
        }
        let c = project_pathway_to_chain(sys, m, p).map_err(|e| e.to_string())?;
        ensure!(validate_chain(&c, target), "measure {}: {:?} is not a chain for {target}", m.name, c.values);
        ensure!(c.len() <= p.len(), "measure {}: chain longer than the pathway", m.name);
    }
    Ok(())
}

fn projection_validity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..500 {
        let k = rng.gen_range(1..=4);
        let sys = TextSystem::new(0..k, false).map_err(|e| e.to_string())?;
        chain_ok(&sys, &random_string_pathway(&mut rng, &sys, 12))?;
    }
    for _ in 0..500 {
        let k = rng.gen_range(1..=3);
        let sys = GraphSystem::new(0..k, [0]).map_err(|e| e.to_string())?;
        chain_ok(&sys, &random_graph_pathway(&mut rng, &sys, 8, 9))?;
    }

    let p = three_colour_pathway();
    let sys = GraphSystem::new([0, 1, 2], [0]).map_err(|e| e.to_string())?;
    chain_ok(&sys, &p)?;
    let all = project_pathway_to_chain(&sys, &MeasureSpec::unit(&sys.basis()), &p).map_err(|e| e.to_string())?;
    ensure!(all.values == [1, 2, 3, 6, 3, 9], "node-count chain {:?}", all.values);
    let red = &sys.measures()[0];
    let r = project_pathway_to_chain(&sys, red, &p).map_err(|e| e.to_string())?;
    ensure!(r.values == [1, 2, 4, 6], "red chain {:?}", r.values);
    Ok("1000 random pathways valid; fixture gives (1,2,3,6,3,9) and (1,2,4,6)".into())
}

/// A test input of length `len`: random bytes, a mutated repeated
/// motif, a small alphabet, or text built from copies of earlier chunks.
fn codec_input(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    match rng.gen_range(0..4) {
        0 => out.extend((0..len).map(|_| rng.gen::<u8>())),
        1 => {
            let motif: Vec<u8> = (0..rng.gen_range(1..=64)).map(|_| rng.gen()).collect();
            while out.len() < len {
                out.extend_from_slice(&motif);
            }
            out.truncate(len);
            for _ in 0..len / 200 {
                let i = rng.gen_range(0..len);
                out[i] = rng.gen();
            }
        }
        2 => {
            let k = rng.gen_range(2..=4u8);
            out.extend((0..len).map(|_| b'a' + rng.gen_range(0..k)));
        }
        _ => {
            while out.len() < len {
                if out.len() > 16 && rng.gen_bool(0.7) {
                    let start = rng.gen_range(0..out.len() - 8);
                    let n = rng.gen_range(4..=(out.len() - start).min(300));
                    out.extend_from_within(start..start + n);
                } else {
                    out.extend((0..rng.gen_range(1..16)).map(|_| b' ' + rng.gen_range(0..95u8)));
                }
            }
            out.truncate(len);
        }
    }
    out
}

fn codec_round_trip() -> Outcome {
    let start = Instant::now();
    let cfg = SearchConfig::with_algorithm(Algorithm::Tree);
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0dec);
    let max = (64usize << 10) as f64;
    let mut total = 0usize;
    for i in 0..10_000 {
        let len = ((max + 1.0).ln() * rng.gen::<f64>()).exp() as usize - 1;
        let text = codec_input(&mut rng, len.min(64 << 10));
        total += text.len();
        let pa = pa_compress(&text, &cfg).map_err(|e| format!("input {i}: {e}"))?;
        ensure!(pa_decompress(&pa).map_err(|e| e.to_string())? == text, "input {i}: pathway codec round trip");
        let lz = lzw_compress(&text);
        ensure!(lzw_decompress(&lz).map_err(|e| e.to_string())? == text, "input {i}: LZW round trip");
    }
    let motif = b"0123456789abcdef";
    let fixture = motif.repeat(1 << 10);
    let pa = pa_compress(&fixture, &cfg).map_err(|e| e.to_string())?.byte_len();
    let lz = lzw_compress(&fixture).byte_len();
    ensure!(pa < lz, "repetitive fixture: pathway {pa} bytes, LZW {lz} bytes");
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(600), "codec suite took {t:?}");
    Ok(format!(
        "10^4 inputs ({:.1} MB) round trip; fixture {pa} vs {lz} bytes; {:.0} s",
        total as f64 / 1e6,
        t.as_secs_f64()
    ))
}

fn corrupt(rng: &mut ChaCha8Rng, table: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = table.len();
    let mut t = table.to_vec();
    let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
    match rng.gen_range(0..4) {
        // A different element in one cell.
        0 => t[r][c] = (t[r][c] + rng.gen_range(1..n)) % n,
        // Two cells of one row swapped.
        1 => {
            let c2 = (c + rng.gen_range(1..n)) % n;
            t[r].swap(c, c2);
        }
        // An entry outside the group.
        2 => t[r][c] = n + rng.gen_range(0..3),
        // A short row.
        _ => {
            t[r].pop();
        }
    }
    t
}

fn group_checks() -> Outcome {
    let cfg = SearchConfig::default();
    let z5 = FiniteGroup::cyclic(5).map_err(|e| e.to_string())?;
    let z5_table: Vec<Vec<usize>> = (0..5).map(|a| (0..5).map(|b| z5.op(a, b)).collect()).collect();
    let r = element_assembly_index(&z5, &[1], 4, &cfg).map_err(|e| e.to_string())?;
    let brute = group_index_oracle(&z5_table, &[1], &[4]);
    ensure!(r.index == 2 && brute == Some(2), "Z5, x=4: index {} brute force {brute:?}", r.index);

    let s3 = FiniteGroup::symmetric(3).map_err(|e| e.to_string())?;
    let gens: Vec<usize> = ["[1, 0, 2]", "[1, 2, 0]"].iter().map(|n| s3.index_of(n).unwrap()).collect();
    let s3_table: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| s3.op(a, b)).collect()).collect();
    let all: Vec<usize> = (0..6).collect();
    let brute = group_index_oracle(&s3_table, &gens, &all);
    let r = group_co_assembly_index(&s3, &gens, &cfg).map_err(|e| e.to_string())?;
    ensure!(
        r.index == S3_CO_INDEX && brute == Some(S3_CO_INDEX),
        "S3 co-index {} brute force {brute:?}",
        r.index
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x9_0009);
    let sources: Vec<Vec<Vec<usize>>> = vec![
        z5_table,
        s3_table,
        (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect(),
        (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect(),
    ];
    let mut seen = HashSet::new();
    while seen.len() < 20 {
        let src = &sources[rng.gen_range(0..sources.len())];
        let t = corrupt(&mut rng, src);
        if !seen.insert(t.clone()) {
            continue;
        }
        let report = verify_group_axioms(&t);
        ensure!(!report.valid, "corrupted table accepted: {t:?}");
    }
    Ok(format!("Z5 index(4)=2, S3 co-index {S3_CO_INDEX}, 20 corrupted tables rejected"))
}

fn size_correlation() -> Outcome {
    let cfg = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x26_0008);
    let mut hits = 0;
    for _ in 0..200 {
        let s: Vec<u32> = (0..8).map(|_| b'a' as u32 + rng.gen_range(0..26)).collect();
        let sys = TextSystem::for_text(&s, false).map_err(|e| e.to_string())?;
        let r = string_assembly_index(&sys, &s, &cfg).map_err(|e| e.to_string())?;
        if r.index == s.len() - 1 {
            hits += 1;
        }
    }
    let share = hits as f64 / 200.0;
    ensure!(share >= 0.6, "{hits}/200 strings have index size-1");
    Ok(format!("{hits}/200 ({:.1}%) have index size-1, threshold 60%", share * 100.0))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("exact chain lengths", exact_integers_from_the_cli),
        ("oracle equivalence", oracle_equivalence),
        ("bound soundness", bound_soundness),
        ("doubling laws", doubling_laws),
        ("projection validity", projection_validity),
        ("codec round trip", codec_round_trip),
        ("group checks", group_checks),
        ("size correlation", size_correlation),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria fail");
        ExitCode::FAILURE
    }
}
