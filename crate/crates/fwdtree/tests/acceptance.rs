//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fwdtree::generate::{all_forward_trees, generate, GeneratorConfig, Shape};
use fwdtree::ingest::parse_edge_list;
use fwdtree::render::{render_matrix, MatrixFormat};
use fwdtree_core::inverse::{invert_cofactor, invert_fast, verify_inverse_triple};
use fwdtree_core::matrix::cycle_branch_matrix;
use fwdtree_core::minor::{det_minor, upper_triangularize};
use fwdtree_core::oracle::{det_oracle, invert_oracle};
use fwdtree_core::structure::{check_forward_matrix, check_minor, check_triangularized};
use fwdtree_core::tree::{assign_forward_indexing, build_tree};
use fwdtree_core::{FwdAdjMatrix, NumberingStrategy, Tree};
use rayon::prelude::*;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn fig1() -> Tree {
    build_tree(&parse_edge_list(&fixture("fig1.edges")).unwrap()).unwrap()
}

/// Seeded tree for fuzz runs: the shape cycles with the seed, and every
/// other block of four seeds goes through scrambled labels and renumbering.
fn fuzz_tree(seed: u64, max_n: usize) -> Tree {
    let n = 1 + (seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 40) as usize % max_n;
    let shape = Shape::ALL[(seed % 4) as usize];
    let cfg = GeneratorConfig::new(n, seed, shape);
    if seed % 8 < 4 {
        build_tree(&generate(&cfg)).unwrap()
    } else {
        let raw = generate(&cfg.scrambled());
        let strategy = if seed.is_multiple_of(2) { NumberingStrategy::DfsPreorder } else { NumberingStrategy::BfsLevel };
        build_tree(&assign_forward_indexing(&raw, strategy).unwrap().apply(&raw)).unwrap()
    }
}

fn fuzz_set(base: u64, count: u64, max_n: usize) -> Vec<Tree> {
    (0..count).map(|s| fuzz_tree(base + s, max_n)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_a() -> Verdict {
    let text = fixture("fig1.edges");
    let expected = fixture("fig1_A.dense");
    let start = Instant::now();
    let t = build_tree(&parse_edge_list(&text).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let rendered = render_matrix(MatrixFormat::Dense, &FwdAdjMatrix::from_tree(&t).to_dense());
    let elapsed = start.elapsed();
    ensure(rendered == expected, || format!("rendered A differs:\n{rendered}"))?;
    ensure(elapsed < Duration::from_millis(1), || format!("took {elapsed:?}, budget 1 ms"))?;
    Ok(format!("12x12 exact, {elapsed:?}"))
}

fn golden_inverse() -> Verdict {
    let t = fig1();
    let a = FwdAdjMatrix::from_tree(&t);
    let expected = fixture("fig1_Ainv.dense");
    let fast = invert_fast(&t).to_dense();
    let cof = invert_cofactor(&a, &t).map_err(|e| e.to_string())?.to_dense();
    let exact = invert_oracle(&a.to_dense()).map_err(|e| e.to_string())?;
    let oracle = exact.to_int_matrix().ok_or("oracle inverse is not integral")?;
    for (name, m) in [("fast", &fast), ("cofactor", &cof), ("oracle", &oracle)] {
        let r = render_matrix(MatrixFormat::Dense, m);
        ensure(r == expected, || format!("{name} inverse differs:\n{r}"))?;
    }
    Ok("fast, cofactor and oracle all exact".into())
}

fn triple_at_scale() -> Verdict {
    let start = Instant::now();
    let trees = fuzz_set(1_000, 1000, 200);
    let bad: Vec<String> = trees
        .par_iter()
        .filter_map(|t| {
            let r = verify_inverse_triple(t);
            (!r.is_ok()).then(|| format!("N={} {:?}", t.n(), r))
        })
        .collect();
    let elapsed = start.elapsed();
    ensure(bad.is_empty(), || format!("{} trees disagree, first: {}", bad.len(), bad[0]))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}, budget 60 s"))?;
    let max_n = trees.iter().map(Tree::n).max().unwrap();
    Ok(format!("1000 trees up to N={max_n}, {elapsed:.2?}"))
}

fn minor_vs_oracle() -> Verdict {
    let trees = fuzz_set(2_000, 200, 60);
    let pairs: usize = trees
        .par_iter()
        .map(|t| -> Result<usize, String> {
            let a = FwdAdjMatrix::from_tree(t);
            let mut count = 0;
            for j in 2..=t.n() {
                for i in 1..j {
                    let fast = det_minor(&a, t, j, i).map_err(|e| e.to_string())?;
                    let m = a.minor(j, i).map_err(|e| e.to_string())?;
                    let oracle = det_oracle(&m.to_dense()).map_err(|e| e.to_string())?;
                    ensure(fast as i128 == oracle, || format!("N={} |M_{{{j},{i}}}| {fast} vs {oracle}", t.n()))?;
                    count += 1;
                }
            }
            Ok(count)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{pairs} minors over 200 trees"))
}

fn region_map() -> Verdict {
    let trees = fuzz_set(3_000, 100, 40);
    let mut pairs = 0usize;
    for t in &trees {
        let a = FwdAdjMatrix::from_tree(t);
        let dense = a.to_dense();
        for j in 2..=t.n() {
            for i in 1..j {
                let m = a.minor(j, i).map_err(|e| e.to_string())?.to_dense();
                ensure(m == dense.without(j - 1, i - 1), || format!("N={} M_{{{j},{i}}} differs", t.n()))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} minors over 100 trees"))
}

fn rotation_sign_for(parents: &[usize]) -> Result<usize, String> {
    let t = Tree::from_parents(parents).map_err(|e| e.to_string())?;
    let a = FwdAdjMatrix::from_tree(&t);
    let mut count = 0;
    for j in 2..=t.n() {
        for i in 1..j {
            let m = a.minor(j, i).map_err(|e| e.to_string())?;
            let tr = upper_triangularize(&m, &a, &t).map_err(|e| e.to_string())?;
            let expected_sign = if (j - i - 1) % 2 == 0 { 1 } else { -1 };
            ensure(tr.sign == expected_sign && tr.interchanges == j - i - 1, || {
                format!("{parents:?} M_{{{j},{i}}}: {} interchanges, sign {}", tr.interchanges, tr.sign)
            })?;
            let det_m = det_oracle(&m.to_dense()).map_err(|e| e.to_string())?;
            let det_r = det_oracle(&tr.rotated.to_dense()).map_err(|e| e.to_string())?;
            ensure(det_r == expected_sign as i128 * det_m, || {
                format!("{parents:?} M_{{{j},{i}}}: det rotated {det_r}, det {det_m}")
            })?;
            count += 1;
        }
    }
    Ok(count)
}

fn rotation_sign() -> Verdict {
    let mut shapes: Vec<Vec<usize>> = Vec::new();
    for n in 1..=8 {
        for shape in Shape::ALL {
            for seed in 0..32 {
                let cfg = GeneratorConfig::new(n, seed, shape);
                shapes.push(build_tree(&generate(&cfg)).unwrap().edges().map(|(p, _)| p).collect());
                let raw = generate(&cfg.scrambled());
                let renamed = assign_forward_indexing(&raw, NumberingStrategy::DfsPreorder).unwrap().apply(&raw);
                shapes.push(build_tree(&renamed).unwrap().edges().map(|(p, _)| p).collect());
            }
        }
    }
    let exhaustive: Vec<Vec<usize>> = (1..=8).flat_map(all_forward_trees).collect();
    let trees = exhaustive.len();
    let pairs: usize = exhaustive
        .par_iter()
        .chain(shapes.par_iter())
        .map(|p| rotation_sign_for(p))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{trees} trees (every tree with N <= 8) plus {} generated, {pairs} minors", shapes.len()))
}

/// Every cycle on `len` nodes through the datum, as a sequence starting at 0.
fn cycle_labelings(len: usize) -> Vec<Vec<(usize, usize)>> {
    fn permute(rest: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == rest.len() {
            out.push(rest.clone());
            return;
        }
        for x in k..rest.len() {
            rest.swap(k, x);
            permute(rest, k + 1, out);
            rest.swap(k, x);
        }
    }
    let mut orders = Vec::new();
    permute(&mut (1..len).collect(), 0, &mut orders);
    orders
        .into_iter()
        .map(|order| {
            let walk: Vec<usize> = std::iter::once(0).chain(order).collect();
            (0..len).map(|k| (walk[k], walk[(k + 1) % len])).collect()
        })
        .collect()
}

fn unimodularity() -> Verdict {
    let mut trees = fuzz_set(1_000, 1000, 200);
    trees.extend(fuzz_set(2_000, 200, 60));
    trees.extend(fuzz_set(3_000, 100, 40));
    trees.push(fig1());
    let bad: Vec<String> = trees
        .par_iter()
        .filter_map(|t| match det_oracle(&FwdAdjMatrix::from_tree(t).to_dense()) {
            Ok(1) => None,
            other => Some(format!("N={} det {other:?}", t.n())),
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} trees with det != 1, first: {}", bad.len(), bad[0]))?;

    let mut cycles = 0;
    for len in 3..=8 {
        let canonical = cycle_branch_matrix(len);
        ensure(det_oracle(&canonical) == Ok(0), || format!("{len}-cycle has nonzero determinant"))?;
        for edges in cycle_labelings(len) {
            let m = fwdtree_core::matrix::branch_matrix(len, &edges);
            ensure(m.is_square(), || format!("{len}-cycle matrix is not square"))?;
            ensure(det_oracle(&m) == Ok(0), || format!("cycle {edges:?} has nonzero determinant"))?;
            ensure(invert_oracle(&m).is_err(), || format!("cycle {edges:?} has an inverse"))?;
            cycles += 1;
        }
    }
    Ok(format!("det = 1 on {} trees, det = 0 on {cycles} numbered cycles of length 3..8", trees.len()))
}

fn structure() -> Verdict {
    let mut trees = fuzz_set(2_000, 200, 60);
    trees.push(fig1());
    let forward_only = fuzz_set(1_000, 1000, 200);
    for t in &forward_only {
        let v = check_forward_matrix(&FwdAdjMatrix::from_tree(t));
        ensure(v.is_empty(), || format!("N={} A: {}", t.n(), v[0]))?;
    }
    let counts: Vec<usize> = trees
        .par_iter()
        .map(|t| -> Result<usize, String> {
            let a = FwdAdjMatrix::from_tree(t);
            let v = check_forward_matrix(&a);
            ensure(v.is_empty(), || format!("N={} A: {}", t.n(), v[0]))?;
            let mut count = 0;
            for j in 2..=t.n() {
                for i in 1..j {
                    let m = a.minor(j, i).map_err(|e| e.to_string())?;
                    let v = check_minor(&m, &a);
                    ensure(v.is_empty(), || format!("N={} M_{{{j},{i}}}: {}", t.n(), v[0]))?;
                    let tr = upper_triangularize(&m, &a, t).map_err(|e| e.to_string())?;
                    let v = check_triangularized(&tr);
                    ensure(v.is_empty(), || format!("N={} reduced M_{{{j},{i}}}: {}", t.n(), v[0]))?;
                    ensure(tr.diagonal == if t.forward_connected(i, j).unwrap() { -1 } else { 0 }, || {
                        format!("N={} reduced M_{{{j},{i}}} has d = {}", t.n(), tr.diagonal)
                    })?;
                    count += 1;
                }
            }
            Ok(count)
        })
        .collect::<Result<_, _>>()?;
    Ok(format!(
        "A of {} trees, A/M/reduced M on {} trees ({} minors)",
        forward_only.len() + trees.len(),
        trees.len(),
        counts.iter().sum::<usize>()
    ))
}

fn path_performance() -> Verdict {
    const N: usize = 100_000;
    let t = build_tree(&generate(&GeneratorConfig::new(N, 0, Shape::Path))).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let inv = invert_fast(&t);
    let ones = inv.ones();
    let elapsed = start.elapsed();
    let expected = (N as u64) * (N as u64 + 1) / 2;
    ensure(ones == expected, || format!("{ones} ones, expected {expected}"))?;
    ensure(inv.get(1, N) == 1 && inv.get(N, 1) == 0, || "corner entries wrong".into())?;
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}, budget 5 s"))?;
    Ok(format!("{ones} ones in {elapsed:.2?}"))
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags; a name filter that matches nothing
    // here skips the gate.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    if filter.as_deref().is_some_and(|f| !"acceptance".contains(f)) {
        return ExitCode::SUCCESS;
    }

    let criteria: [Criterion; 9] = [
        ("golden A of the reference tree", golden_a),
        ("golden inverse by all three methods", golden_inverse),
        ("three-way inverse agreement and A * inv = I at scale", triple_at_scale),
        ("minor determinants against the oracle", minor_vs_oracle),
        ("minor region map against naive deletion", region_map),
        ("rotation sign, every tree with N <= 8", rotation_sign),
        ("det(A) = 1 on fuzzed trees, cycles singular", unimodularity),
        ("structural predicates on A, M and reduced M", structure),
        ("fast inverse of a 100000-node path", path_performance),
    ];
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed:.2?}]", idx + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{elapsed:.2?}]", idx + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

