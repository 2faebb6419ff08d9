//! One line per acceptance criterion. Run with
//! `cargo test -p arf-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use arf_core::genusr::{twisted_count_table, GenusTable, SplitStrategy};
use arf_core::tree::next_permutation;
use arf_core::verify::{
    brute_force_genus_trees, chain_genus, check_arf_axiom, check_good_axioms, default_box,
};
use arf_core::{
    brute_force_genus, enumerate_all_trees, enumerate_genus, enumerate_genus_trees,
    validate_sequence, validate_tree, UntwistedTree,
};

type Outcome = Result<String, String>;

const RANK_ONE: [u64; 16] = [1, 1, 2, 3, 4, 6, 8, 10, 13, 17, 21, 26, 31, 36, 47, 55];

const RANK_TWO: [u64; 32] = [
    1, 3, 8, 16, 32, 56, 99, 157, 251, 385, 577, 837, 1207, 1701, 2361, 3239, 4386, 5874, 7773,
    10195, 13270, 17138, 21922, 27882, 35203, 44209, 55175, 68493, 84540, 103898, 127031, 154681,
];

const FULL_TABLE: [[u64; 16]; 16] = [
    [1, 1, 2, 3, 4, 6, 8, 10, 13, 17, 21, 26, 31, 36, 47, 55],
    [0, 1, 3, 8, 16, 32, 56, 99, 157, 251, 385, 577, 837, 1207, 1701, 2361],
    [0, 0, 1, 5, 18, 49, 120, 263, 543, 1048, 1943, 3458, 5957, 9957, 16246, 25896],
    [0, 0, 0, 1, 7, 32, 110, 324, 846, 2032, 4544, 9620, 19420, 37686, 70618, 128399],
    [0, 0, 0, 0, 1, 9, 50, 207, 716, 2169, 5958, 15119, 35994, 81196, 175001, 362501],
    [0, 0, 0, 0, 0, 1, 11, 72, 348, 1384, 4772, 14769, 41919, 110859, 276257, 654422],
    [0, 0, 0, 0, 0, 0, 1, 13, 98, 541, 2432, 9403, 32385, 101658, 295681, 806530],
    [0, 0, 0, 0, 0, 0, 0, 1, 15, 128, 794, 3980, 17050, 64678, 222474, 705806],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 17, 162, 1115, 6164, 28973, 120016, 448873],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 19, 200, 1512, 9136, 46736, 209871],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 21, 242, 1993, 13064, 72239],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 23, 288, 2566, 18132],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 25, 338, 3239],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 27, 392],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 29],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
];

const ALL_RANKS: [u64; 16] = [
    1, 2, 6, 17, 46, 129, 356, 989, 2737, 7588, 21031, 58289, 161535, 447693, 1240773, 3438746,
];

const TWISTED_TABLE: [[u64; 9]; 9] = [
    [1, 1, 2, 3, 4, 6, 8, 10, 13],
    [0, 1, 3, 8, 16, 32, 56, 99, 157],
    [0, 0, 1, 6, 22, 61, 151, 334, 693],
    [0, 0, 0, 1, 10, 51, 189, 576, 1555],
    [0, 0, 0, 0, 1, 15, 105, 505, 1906],
    [0, 0, 0, 0, 0, 1, 21, 197, 1208],
    [0, 0, 0, 0, 0, 0, 1, 28, 343],
    [0, 0, 0, 0, 0, 0, 0, 1, 36],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rank_one_counts() -> Outcome {
    for (n, &want) in RANK_ONE.iter().enumerate() {
        let got = enumerate_genus(n as u32).len() as u64;
        ensure(got == want, || format!("Gen(1,{n}) = {got}, expected {want}"))?;
    }
    Ok("n = 0..15".into())
}

fn rank_two_counts() -> Outcome {
    let mut table = GenusTable::new(32).map_err(|e| e.to_string())?;
    for (i, &want) in RANK_TWO.iter().enumerate() {
        let n = i as u32 + 1;
        let got = table.count(2, n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("Gen(2,{n}) = {got}, expected {want}"))?;
    }
    Ok("n = 1..32".into())
}

fn full_table(table: &mut GenusTable) -> Outcome {
    for (r, row) in FULL_TABLE.iter().enumerate() {
        for (n, &want) in row.iter().enumerate() {
            let got = table.count(r + 1, n as u32).map_err(|e| e.to_string())?;
            ensure(got == want, || {
                format!("Gen({},{n}) = {got}, expected {want}", r + 1)
            })?;
        }
    }
    Ok("r = 1..16, n = 0..15".into())
}

fn all_ranks_row(table: &mut GenusTable) -> Outcome {
    for (n, &want) in ALL_RANKS.iter().enumerate() {
        let got = arf_core::genusr::ng_with(table, n as u32).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("NG({n}) = {got}, expected {want}"))?;
    }
    Ok("n = 0..15".into())
}

fn twisted_table() -> Outcome {
    let got = twisted_count_table(9, 8, 9).map_err(|e| e.to_string())?;
    for (r, row) in TWISTED_TABLE.iter().enumerate() {
        for (n, &want) in row.iter().enumerate() {
            let g = got[r][n];
            ensure(g == want, || format!("twisted ({},{n}) = {g}, expected {want}", r + 1))?;
        }
    }
    Ok("r = 1..9, n = 0..8".into())
}

fn tree(seqs: &[&[u32]], gluing: &[u32]) -> UntwistedTree {
    validate_tree(
        seqs.iter().map(|v| validate_sequence(v).unwrap()).collect(),
        gluing.to_vec(),
    )
    .unwrap()
}

fn worked_example() -> Outcome {
    let listed: BTreeSet<UntwistedTree> = [
        tree(&[&[1], &[3]], &[1]),
        tree(&[&[1], &[2, 2]], &[1]),
        tree(&[&[3], &[1]], &[1]),
        tree(&[&[2, 2], &[1]], &[1]),
        tree(&[&[2], &[2]], &[1]),
        tree(&[&[1], &[2]], &[2]),
        tree(&[&[2], &[1]], &[2]),
        tree(&[&[1], &[1]], &[3]),
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<UntwistedTree> = enumerate_genus_trees(2, 3)
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    ensure(got == listed, || format!("got {got:?}"))?;
    Ok("8 trees".into())
}

fn oracle_equivalence() -> Outcome {
    for n in 0..=12 {
        ensure(enumerate_genus(n) == brute_force_genus(n), || {
            format!("genus {n} sequences differ")
        })?;
    }
    let mut trees = 0;
    for r in 1..=4 {
        for n in 0..=7 {
            let fast = enumerate_genus_trees(r, n).map_err(|e| e.to_string())?;
            let slow = brute_force_genus_trees(r, n);
            ensure(fast == slow, || {
                format!("Gen({r},{n}): {} vs {} trees", fast.len(), slow.len())
            })?;
            trees += fast.len();
        }
    }
    Ok(format!("sequences n <= 12, {trees} trees r <= 4, n <= 7"))
}

fn chain_genus_consistency() -> Outcome {
    let mut trees = 0;
    for r in 1..=3 {
        for n in 0..=6 {
            for t in enumerate_genus_trees(r, n).map_err(|e| e.to_string())? {
                let g = chain_genus(&t).map_err(|e| format!("{t}: {e}"))?;
                ensure(g == t.genus() && g == u64::from(n), || {
                    format!("{t}: chain genus {g}, tree genus {}", t.genus())
                })?;
                trees += 1;
            }
        }
    }
    Ok(format!("{trees} trees"))
}

fn axiom_suite() -> Outcome {
    let (mut trees, mut checked, mut unchecked) = (0, 0, 0);
    for r in 1..=3 {
        for n in 0..=5 {
            for t in enumerate_genus_trees(r, n).map_err(|e| e.to_string())? {
                let s = t
                    .expand_semigroup(&default_box(&t.conductor()))
                    .map_err(|e| format!("{t}: {e}"))?;
                for report in [check_good_axioms(&s), check_arf_axiom(&s)] {
                    ensure(report.passed() && report.local, || {
                        format!("{t}: {:?}, local = {}", report.violations, report.local)
                    })?;
                    checked += report.checked;
                    unchecked += report.unchecked;
                }
                trees += 1;
            }
        }
    }
    Ok(format!("{trees} trees, {checked} checks, {unchecked} unchecked"))
}

fn symmetry_suite() -> Outcome {
    let mut trees = 0;
    for r in 1..=4 {
        for n in 0..=6 {
            let gen = enumerate_genus_trees(r, n).map_err(|e| e.to_string())?;
            let set: BTreeSet<&UntwistedTree> = gen.iter().collect();
            for t in &gen {
                let rev = t.reverse();
                ensure(&rev.reverse() == t, || format!("{t}: reversal is not an involution"))?;
                ensure(rev.genus() == t.genus(), || format!("{t}: reversal changes genus"))?;
                ensure(set.contains(&rev), || format!("{t}: reversal leaves Gen({r},{n})"))?;
            }
            let all = enumerate_all_trees(r, n).map_err(|e| e.to_string())?;
            let all_set: BTreeSet<_> = all.iter().cloned().collect();
            for m in &all {
                let mut sigma: Vec<usize> = (0..r).collect();
                loop {
                    let p = m.permute(&sigma).map_err(|e| e.to_string())?;
                    ensure(all_set.contains(&p), || {
                        format!("relabeling {sigma:?} leaves the twisted set ({r},{n})")
                    })?;
                    if !next_permutation(&mut sigma) {
                        break;
                    }
                }
                ensure(m.genus() == u64::from(n), || format!("{m:?}: genus {}", m.genus()))?;
            }
            trees += gen.len() + all.len();
        }
    }
    Ok(format!("{trees} trees and matrices"))
}

fn split_robustness() -> Outcome {
    let mut variants = 0;
    for r in 2..=4 {
        for n in 0..=6 {
            let reference = enumerate_genus_trees(r, n).map_err(|e| e.to_string())?;
            for t in 1..r {
                for full_range in [false, true] {
                    // The reversal shortcut is only valid for a seam in the left half.
                    if !full_range && 2 * t > r {
                        continue;
                    }
                    let strategy = SplitStrategy {
                        seam: Some(t),
                        full_range,
                    };
                    let got = GenusTable::with_strategy(n, strategy)
                        .and_then(|mut table| table.trees(r, n))
                        .map_err(|e| e.to_string())?;
                    ensure(got == reference, || {
                        format!("Gen({r},{n}) with seam {t}, full range {full_range} differs")
                    })?;
                    variants += 1;
                }
            }
        }
    }
    Ok(format!("{variants} split variants"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut run = |name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} ({secs:.2}s)");
            }
        }
    };

    let mut shared = GenusTable::new(15).expect("table bound");
    run("numerical counts", &mut rank_one_counts);
    run("rank-2 counts", &mut rank_two_counts);
    run("full untwisted table", &mut || full_table(&mut shared));
    run("all-ranks row", &mut || all_ranks_row(&mut shared));
    drop(shared);
    run("twisted table", &mut twisted_table);
    run("worked example", &mut worked_example);
    run("oracle equivalence", &mut oracle_equivalence);
    run("chain genus consistency", &mut chain_genus_consistency);
    run("axiom suite", &mut axiom_suite);
    run("symmetry suite", &mut symmetry_suite);
    run("split robustness", &mut split_robustness);

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
