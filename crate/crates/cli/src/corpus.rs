//! The builtin corpus and corpus selection.
//!
//! Regular representations (Q8, SL(2,3), the extraspecial group of order 27
//! and SL(2,5)) are built from matrix generators over a prime field: the
//! matrix group is enumerated, its elements sorted, and each generator
//! acts on that list by right multiplication.

use std::collections::{BTreeMap, VecDeque};
use std::path::PathBuf;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use commcrit::Permutation;

use crate::descriptor::{load, read_descriptor, GroupDescriptor, LoadedGroup, Source, Tag};
use crate::error::CliError;

type Matrix = Vec<u32>;

fn mat_mul(a: &Matrix, b: &Matrix, n: usize, p: u32) -> Matrix {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).map(|t| a[i * n + t] * b[t * n + j]).sum::<u32>() % p;
        }
    }
    out
}

/// Right regular representation of the `n×n` matrix group over `F_p`
/// generated by `gens`, as 1-based image arrays.
fn matrix_regular(p: u32, n: usize, gens: &[Matrix]) -> Vec<Vec<usize>> {
    let identity: Matrix = (0..n * n).map(|i| u32::from(i % (n + 1) == 0)).collect();
    let mut elements = vec![identity.clone()];
    let mut seen = std::collections::HashSet::from([identity]);
    let mut queue: VecDeque<Matrix> = elements.iter().cloned().collect();
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let next = mat_mul(&m, g, n, p);
            if seen.insert(next.clone()) {
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    elements.sort();
    let index: BTreeMap<&Matrix, usize> = elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
    gens.iter()
        .map(|g| {
            elements
                .iter()
                .map(|m| index[&mat_mul(m, g, n, p)] + 1)
                .collect()
        })
        .collect()
}

fn cycles(degree: usize, gens: &[&str]) -> Vec<Vec<usize>> {
    gens.iter()
        .map(|c| {
            Permutation::parse_cycles(degree, c)
                .expect("builtin generator")
                .images_one_based()
        })
        .collect()
}

fn builtin(id: &str, degree: usize, generators: Vec<Vec<usize>>, order: u64, tags: &[Tag]) -> GroupDescriptor {
    GroupDescriptor {
        id: id.to_string(),
        source: Source::Builtin,
        degree,
        generators,
        expected_order: Some(order),
        tags: tags.to_vec(),
    }
}

fn cyclic(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n + 1).collect()
}

/// Descriptors of all builtin groups, sorted by id.
pub fn builtin_descriptors() -> Vec<GroupDescriptor> {
    use Tag::*;
    let sol = [Soluble];
    let nil = [Soluble, Nilpotent];
    let ab = [Soluble, Nilpotent, Abelian];
    let insol = [Insoluble];

    let mut out = vec![
        builtin("trivial", 1, vec![vec![1]], 1, &ab),
        builtin("V4", 4, cycles(4, &["(1 2)(3 4)", "(1 3)(2 4)"]), 4, &ab),
        builtin("S3", 3, cycles(3, &["(1 2)", "(1 2 3)"]), 6, &sol),
        builtin("S4", 4, cycles(4, &["(1 2)", "(1 2 3 4)"]), 24, &sol),
        builtin("S5", 5, cycles(5, &["(1 2)", "(1 2 3 4 5)"]), 120, &insol),
        builtin("A4", 4, cycles(4, &["(1 2 3)", "(1 2)(3 4)"]), 12, &sol),
        builtin("A5", 5, cycles(5, &["(1 2 3)", "(1 2 3 4 5)"]), 60, &insol),
        builtin("A6", 6, cycles(6, &["(1 2 3)", "(2 3 4 5 6)"]), 360, &insol),
        builtin("F20", 5, cycles(5, &["(1 2 3 4 5)", "(2 3 5 4)"]), 20, &sol),
        builtin("C3sdC4", 7, cycles(7, &["(1 2 3)", "(2 3)(4 5 6 7)"]), 12, &sol),
        builtin("C7sdC3", 7, cycles(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]), 21, &sol),
        builtin("S3xS3", 6, cycles(6, &["(1 2)", "(1 2 3)", "(4 5)", "(4 5 6)"]), 36, &sol),
        builtin("C3wrC2", 6, cycles(6, &["(1 2 3)", "(1 4)(2 5)(3 6)"]), 18, &sol),
        builtin("S4xC3", 7, cycles(7, &["(1 2)", "(1 2 3 4)", "(5 6 7)"]), 72, &sol),
        builtin(
            "PSL2_7",
            8,
            cycles(8, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)", "(1 8)(2 7)(3 4)(5 6)"]),
            168,
            &insol,
        ),
        builtin(
            "Q8",
            8,
            matrix_regular(3, 2, &[vec![0, 2, 1, 0], vec![1, 1, 1, 2]]),
            8,
            &nil,
        ),
        builtin(
            "SL2_3",
            24,
            matrix_regular(3, 2, &[vec![1, 1, 0, 1], vec![0, 2, 1, 0]]),
            24,
            &sol,
        ),
        builtin(
            "He3",
            27,
            matrix_regular(
                3,
                3,
                &[vec![1, 1, 0, 0, 1, 0, 0, 0, 1], vec![1, 0, 0, 0, 1, 1, 0, 0, 1]],
            ),
            27,
            &nil,
        ),
        builtin(
            "SL2_5",
            120,
            matrix_regular(5, 2, &[vec![1, 1, 0, 1], vec![0, 4, 1, 0]]),
            120,
            &insol,
        ),
    ];
    for n in 2..=12usize {
        out.push(builtin(&format!("C{n}"), n, vec![cyclic(n)], n as u64, &ab));
    }
    for n in 3..=12usize {
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n + 1).collect();
        let tags: &[Tag] = if n.is_power_of_two() { &nil } else { &sol };
        out.push(builtin(
            &format!("D{}", 2 * n),
            n,
            vec![cyclic(n), reflection],
            2 * n as u64,
            tags,
        ));
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn builtin_ids() -> Vec<String> {
    builtin_descriptors().into_iter().map(|d| d.id).collect()
}

pub fn describe_builtin(id: &str) -> Result<GroupDescriptor, CliError> {
    builtin_descriptors()
        .into_iter()
        .find(|d| d.id == id)
        .ok_or_else(|| CliError::UnknownGroup(id.to_string()))
}

/// Which groups a command runs on.
#[derive(Clone, Debug, Default)]
pub struct Selection {
    /// Builtin ids; empty means all builtins unless `files` is non-empty.
    pub ids: Vec<String>,
    pub files: Vec<PathBuf>,
    pub tag: Option<Tag>,
}

/// The verified groups of a selection, sorted by id.
pub fn select(sel: &Selection) -> Result<Vec<LoadedGroup>, CliError> {
    let builtins = builtin_descriptors();
    let mut descriptors = Vec::new();
    for id in &sel.ids {
        let d = builtins
            .iter()
            .find(|d| &d.id == id)
            .ok_or_else(|| CliError::UnknownGroup(id.clone()))?;
        descriptors.push(d.clone());
    }
    for path in &sel.files {
        descriptors.push(read_descriptor(path)?);
    }
    if sel.ids.is_empty() && sel.files.is_empty() {
        descriptors = builtins;
    }
    descriptors.sort_by(|a, b| a.id.cmp(&b.id));
    descriptors.dedup_by(|a, b| a.id == b.id && a.source == b.source);
    let loaded = descriptors
        .into_par_iter()
        .map(load)
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::with_capacity(loaded.len());
    for g in loaded {
        if let Some(tag) = sel.tag {
            if !g.has_tag(tag)? {
                continue;
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// SHA-256 over the canonical `(id, degree, generators)` of each group.
pub fn corpus_hash(groups: &[LoadedGroup]) -> String {
    let mut hasher = Sha256::new();
    for g in groups {
        let d = &g.descriptor;
        let canonical = serde_json::to_vec(&(&d.id, d.degree, &d.generators)).expect("serializable");
        hasher.update((canonical.len() as u64).to_le_bytes());
        hasher.update(&canonical);
    }
    hex::encode(hasher.finalize())
}
