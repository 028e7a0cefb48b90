//! Isomorphism by permutation backtracking with degree pruning, canonical
//! forms by minimum relabeled adjacency code, and exhaustive enumeration of
//! labeled graphs / isomorphism classes at desk scale.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("enumeration of labeled graphs supported for n <= {max}, got {n}")]
    LabeledTooLarge { n: usize, max: usize },
    #[error("isomorphism-class enumeration supported for n <= {max}, got {n}")]
    ClassesTooLarge { n: usize, max: usize },
}

/// Largest order for which `enumerate_classes` is willing to run.
pub const MAX_CLASS_ENUM: usize = 7;
/// Largest order for which `enumerate_labeled` is willing to run (2^28 is
/// already out of desk scale).
pub const MAX_LABELED_ENUM: usize = 7;

/// Edge-preserving bijection from `g` to `h`, or `None`. Deterministic: the
/// lexicographically least witness (as the image vector of vertices 0,1,...).
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<Vertex>> {
    let n = g.order();
    if n != h.order() {
        return None;
    }
    if g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let mut image: Vec<Vertex> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if assign(g, h, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn assign(g: &Graph, h: &Graph, image: &mut Vec<Vertex>, used: &mut [bool]) -> bool {
    let u = image.len();
    if u == g.order() {
        return true;
    }
    for w in 0..h.order() {
        if used[w] || g.degree(u) != h.degree(w) {
            continue;
        }
        if (0..u).any(|p| g.has_edge(p, u) != h.has_edge(image[p], w)) {
            continue;
        }
        image.push(w);
        used[w] = true;
        if assign(g, h, image, used) {
            return true;
        }
        image.pop();
        used[w] = false;
    }
    false
}

pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Upper-triangle adjacency bits of `g` under relabeling `perm`
/// (perm[old] = new), packed in graph6 column-major bit order.
fn code_under(g: &Graph, perm: &[Vertex]) -> u32 {
    let n = g.order();
    let mut inv = [0usize; 16];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let mut code = 0u32;
    for j in 1..n {
        for i in 0..j {
            code = (code << 1) | g.has_edge(inv[i], inv[j]) as u32;
        }
    }
    code
}

fn permutations(n: usize) -> &'static [Vec<Vertex>] {
    static TABLES: std::sync::OnceLock<Vec<Vec<Vec<Vertex>>>> = std::sync::OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=MAX_CLASS_ENUM)
            .map(|n| {
                let mut out = Vec::new();
                let mut cur: Vec<Vertex> = (0..n).collect();
                heap_permute(&mut cur, n, &mut out);
                out
            })
            .collect()
    });
    &tables[n]
}

fn heap_permute(cur: &mut Vec<Vertex>, k: usize, out: &mut Vec<Vec<Vertex>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(cur, k - 1, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

fn graph_from_code(n: usize, code: u32) -> Graph {
    let nbits = n * n.saturating_sub(1) / 2;
    let mut g = Graph::empty(n);
    let mut bit = nbits;
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if code >> bit & 1 == 1 {
                g.toggle_edge(i, j);
            }
        }
    }
    g
}

/// Minimum adjacency code over all relabelings; equal on two graphs iff they
/// are isomorphic. Intended for order <= 7.
pub fn canonical_code(g: &Graph) -> u32 {
    let n = g.order();
    assert!(n <= MAX_CLASS_ENUM, "canonical codes computed only up to n = {MAX_CLASS_ENUM}");
    if n <= 1 {
        return 0;
    }
    permutations(n)
        .iter()
        .map(|p| code_under(g, p))
        .min()
        .unwrap()
}

/// Canonically labeled representative of `g`'s isomorphism class.
pub fn canonical_form(g: &Graph) -> Graph {
    graph_from_code(g.order(), canonical_code(g))
}

/// All 2^(n(n-1)/2) labeled graphs on n vertices, in ascending adjacency-code
/// order.
pub fn enumerate_labeled(n: usize) -> Result<impl Iterator<Item = Graph>, EnumError> {
    if n > MAX_LABELED_ENUM {
        return Err(EnumError::LabeledTooLarge { n, max: MAX_LABELED_ENUM });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    Ok((0..1u32 << nbits).map(move |code| graph_from_code(n, code)))
}

/// One canonically labeled representative per isomorphism class, in ascending
/// canonical-code order. Built by extending the classes on n-1 vertices with
/// every neighborhood of a new vertex.
pub fn enumerate_classes(n: usize) -> Result<Vec<Graph>, EnumError> {
    if n > MAX_CLASS_ENUM {
        return Err(EnumError::ClassesTooLarge { n, max: MAX_CLASS_ENUM });
    }
    if n == 0 {
        return Ok(vec![Graph::empty(0)]);
    }
    let mut reps = vec![Graph::empty(1)];
    for m in 2..=n {
        let mut codes = BTreeSet::new();
        for base in &reps {
            for nbhd in 0..1u16 << (m - 1) {
                let mut g = Graph::empty(m);
                for (u, v) in base.edges() {
                    g.toggle_edge(u, v);
                }
                for v in 0..m - 1 {
                    if nbhd >> v & 1 == 1 {
                        g.toggle_edge(v, m - 1);
                    }
                }
                codes.insert(canonical_code(&g));
            }
        }
        reps = codes.into_iter().map(|c| graph_from_code(m, c)).collect();
    }
    Ok(reps)
}
