//! One-dimensional subshift analytics for `X_p`: the De Bruijn graph of
//! the single forbidden pattern, word counting by path counting, entropy
//! by per-component power iteration, language inclusion, and the action
//! of local rules on periodic points.

use crate::group::GroupSubset;
use crate::pattern::{decode_into, Pattern};
use crate::rule::LocalRule;
use crate::{par, Error, Result};

/// Vertex/edge presentation of a binary-or-larger one-dimensional SFT
/// with window `m`: vertices are admissible words of length `m - 1`,
/// edges admissible words of length `m` (a word `w` joins its prefix to
/// its suffix). After trimming, every surviving vertex lies on a
/// bi-infinite walk, so walks correspond exactly to words occurring in
/// points of the subshift.
#[derive(Debug, Clone)]
pub struct DeBruijnGraph {
    k: u8,
    window: usize,
    vert_alive: Vec<bool>,
    edge_alive: Vec<bool>,
}

/// Offsets of the constrained cells of `p` inside its span, with the
/// pattern values; positions in the gaps are unconstrained.
fn span_offsets(p: &Pattern) -> Result<(usize, Vec<(usize, u8)>)> {
    if !p.group().is_integers() {
        return Err(Error::UnsupportedCarrier(
            "subshift analytics require the carrier Z".into(),
        ));
    }
    let ints: Vec<i64> = p
        .domain()
        .iter()
        .map(|e| e.as_int().expect("rank-1 carrier"))
        .collect();
    let min = *ints.iter().min().expect("nonempty domain");
    let max = *ints.iter().max().expect("nonempty domain");
    let span = (max - min + 1) as usize;
    let offsets = ints
        .iter()
        .zip(p.values())
        .map(|(&i, &v)| ((i - min) as usize, v))
        .collect();
    Ok((span, offsets))
}

impl DeBruijnGraph {
    /// Graph of `X_p` for `p` over `Z`: a length-`m` word is an edge iff
    /// it does not read `p` at the domain offsets. The graph is trimmed
    /// to its bi-infinitely extendable part.
    pub fn build(p: &Pattern) -> Result<Self> {
        let (span, offsets) = span_offsets(p)?;
        Self::build_with_window(p, span.max(1), &offsets)
    }

    /// As [`DeBruijnGraph::build`] but with an explicit window at least
    /// the span of `p`; the pattern is forbidden at the suffix alignment,
    /// which constrains every position of a bi-infinite walk.
    fn build_with_window(p: &Pattern, window: usize, offsets: &[(usize, u8)]) -> Result<Self> {
        let k = p.alphabet().size();
        let (span, _) = span_offsets(p)?;
        if window < span {
            return Err(Error::InvalidInput(
                "window shorter than the pattern span".into(),
            ));
        }
        let edge_count = crate::checked_table_len(k, window)?;
        let shift = window - span;
        let forbidden: Vec<(usize, u8)> = offsets
            .iter()
            .map(|&(off, v)| (off + shift, v))
            .collect();
        let edge_alive = {
            let table = par::table_from_fn(edge_count, |code| {
                let mut w = vec![0u8; window];
                decode_into(code, k, &mut w);
                u8::from(!forbidden.iter().all(|&(pos, v)| w[pos] == v))
            });
            table.into_iter().map(|b| b == 1).collect()
        };
        let vert_count = edge_count / k as usize;
        let mut graph = DeBruijnGraph {
            k,
            window,
            vert_alive: vec![true; vert_count.max(1)],
            edge_alive,
        };
        graph.trim();
        Ok(graph)
    }

    /// The unconstrained full shift on `k` symbols with the given window.
    pub fn full_shift(k: u8, window: usize) -> Result<Self> {
        let edge_count = crate::checked_table_len(k, window)?;
        Ok(DeBruijnGraph {
            k,
            window,
            vert_alive: vec![true; (edge_count / k as usize).max(1)],
            edge_alive: vec![true; edge_count],
        })
    }

    fn vert_count(&self) -> usize {
        self.vert_alive.len()
    }

    /// Source and target vertices of an edge code.
    fn endpoints(&self, edge: usize) -> (usize, usize) {
        if self.window == 1 {
            (0, 0)
        } else {
            (edge / self.k as usize, edge % self.vert_count())
        }
    }

    /// Iteratively removes vertices missing an incoming or outgoing edge.
    fn trim(&mut self) {
        loop {
            let mut indeg = vec![0usize; self.vert_count()];
            let mut outdeg = vec![0usize; self.vert_count()];
            for (e, alive) in self.edge_alive.iter().enumerate() {
                if *alive {
                    let (u, v) = self.endpoints(e);
                    if self.vert_alive[u] && self.vert_alive[v] {
                        outdeg[u] += 1;
                        indeg[v] += 1;
                    }
                }
            }
            let mut changed = false;
            for v in 0..self.vert_count() {
                if self.vert_alive[v] && (indeg[v] == 0 || outdeg[v] == 0) {
                    self.vert_alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for e in 0..self.edge_alive.len() {
            if self.edge_alive[e] {
                let (u, v) = self.endpoints(e);
                if !self.vert_alive[u] || !self.vert_alive[v] {
                    self.edge_alive[e] = false;
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.edge_alive.iter().any(|&b| b)
    }

    pub fn alive_vertices(&self) -> usize {
        self.vert_alive.iter().filter(|&&b| b).count()
    }

    pub fn alive_edges(&self) -> usize {
        self.edge_alive.iter().filter(|&&b| b).count()
    }

    /// Adjacency counts between alive vertices (generally 0/1; window 1
    /// graphs carry one self-loop per surviving symbol).
    fn adjacency(&self) -> (Vec<usize>, Vec<Vec<u128>>) {
        let ids: Vec<usize> = (0..self.vert_count())
            .filter(|&v| self.vert_alive[v])
            .collect();
        let pos: std::collections::HashMap<usize, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut matrix = vec![vec![0u128; ids.len()]; ids.len()];
        for (e, alive) in self.edge_alive.iter().enumerate() {
            if *alive {
                let (u, v) = self.endpoints(e);
                matrix[pos[&u]][pos[&v]] += 1;
            }
        }
        (ids, matrix)
    }

    /// Number of length-`n` words occurring in points of the subshift.
    pub fn count_words(&self, n: usize) -> u128 {
        if self.is_empty() {
            return 0;
        }
        let m = self.window;
        if n + 1 >= m {
            // Walks with n - m + 1 edges spell exactly the length-n words.
            let (_, matrix) = self.adjacency();
            let size = matrix.len();
            let mut counts = vec![1u128; size];
            for _ in 0..(n + 1 - m) {
                let mut next = vec![0u128; size];
                for (u, row) in matrix.iter().enumerate() {
                    for (v, &c) in row.iter().enumerate() {
                        next[u] += c * counts[v];
                    }
                }
                counts = next;
            }
            counts.iter().sum()
        } else {
            // Short words: distinct length-n factors of alive vertices.
            let mut seen = std::collections::HashSet::new();
            let mut word = vec![0u8; m - 1];
            for (v, alive) in self.vert_alive.iter().enumerate() {
                if *alive {
                    decode_into(v, self.k, &mut word);
                    for start in 0..=(m - 1 - n) {
                        seen.insert(word[start..start + n].to_vec());
                    }
                }
            }
            seen.len() as u128
        }
    }

    /// Strongly connected components of the alive subgraph (Tarjan,
    /// iterative).
    fn sccs(&self) -> Vec<Vec<usize>> {
        let (ids, matrix) = self.adjacency();
        let n = ids.len();
        let succ: Vec<Vec<usize>> = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(_, &c)| c > 0)
                    .map(|(v, _)| v)
                    .collect()
            })
            .collect();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut next_index = 0usize;
        let mut components = Vec::new();
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            // Explicit DFS stack of (vertex, next-successor position).
            let mut work = vec![(root, 0usize)];
            while let Some(&mut (v, ref mut i)) = work.last_mut() {
                if *i == 0 {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                }
                if let Some(&w) = succ[v].get(*i) {
                    *i += 1;
                    if index[w] == usize::MAX {
                        work.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    work.pop();
                    if let Some(&(parent, _)) = work.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut component = Vec::new();
                        while let Some(w) = stack.pop() {
                            on_stack[w] = false;
                            component.push(w);
                            if w == v {
                                break;
                            }
                        }
                        components.push(component);
                    }
                }
            }
        }
        components
    }

    /// Spectral radius of the adjacency matrix: the maximum over strongly
    /// connected components, each found by power iteration on `I + A`
    /// (the shift keeps periodic components convergent). Each step
    /// brackets the radius with the min and max of `(Bv)_i / v_i`, which
    /// enclose the dominant eigenvalue of a nonnegative matrix, so the
    /// returned value is within `tol` of the true radius. Also returns
    /// the total iteration count.
    pub fn spectral_radius(&self, tol: f64) -> Result<(f64, u64)> {
        if self.is_empty() {
            return Err(Error::EmptySubshift);
        }
        const MAX_ITERATIONS: u64 = 1_000_000;
        let (_, matrix) = self.adjacency();
        let mut best = 0.0f64;
        let mut iterations = 0u64;
        for component in self.sccs() {
            let size = component.len();
            let sub: Vec<Vec<f64>> = component
                .iter()
                .map(|&u| component.iter().map(|&v| matrix[u][v] as f64).collect())
                .collect();
            if size == 1 && sub[0][0] == 0.0 {
                continue; // transient vertex, radius 0
            }
            let mut v = vec![1.0f64; size];
            let mut converged = false;
            while iterations < MAX_ITERATIONS {
                iterations += 1;
                // w = (I + A) v stays strictly positive, so the quotient
                // bounds are always defined.
                let mut w = v.clone();
                for (i, row) in sub.iter().enumerate() {
                    for (j, &a) in row.iter().enumerate() {
                        w[i] += a * v[j];
                    }
                }
                let mut lower = f64::INFINITY;
                let mut upper = 0.0f64;
                for (wi, vi) in w.iter().zip(&v) {
                    let q = wi / vi;
                    lower = lower.min(q);
                    upper = upper.max(q);
                }
                let scale = w.iter().cloned().fold(0.0f64, f64::max);
                v = w.into_iter().map(|x| x / scale).collect();
                if upper - lower < tol {
                    best = best.max((lower + upper) / 2.0 - 1.0);
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NoConvergence(MAX_ITERATIONS));
            }
        }
        Ok((best, iterations))
    }
}

/// Entropy of a subshift graph in both bases, with the estimated spectral
/// radius and the power-iteration count behind it.
#[derive(Debug, Clone, Copy)]
pub struct EntropyEstimate {
    pub log2: f64,
    pub ln: f64,
    pub spectral_radius: f64,
    pub iterations: u64,
}

/// Builds the trimmed graph of `X_p` and counts its length-`n` words.
pub fn count_words(p: &Pattern, n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::Precondition("word length must be positive".into()));
    }
    Ok(DeBruijnGraph::build(p)?.count_words(n))
}

/// Topological entropy of `X_p` as the log of the spectral radius of the
/// trimmed graph, reported in base 2 and natural log side by side.
pub fn entropy(p: &Pattern, tol: f64) -> Result<EntropyEstimate> {
    entropy_of_graph(&DeBruijnGraph::build(p)?, tol)
}

pub fn entropy_of_graph(graph: &DeBruijnGraph, tol: f64) -> Result<EntropyEstimate> {
    let (radius, iterations) = graph.spectral_radius(tol)?;
    Ok(EntropyEstimate {
        log2: radius.log2(),
        ln: radius.ln(),
        spectral_radius: radius,
        iterations,
    })
}

/// Whether `X_p` is contained in `X_q`, i.e. whether `q` occurs in no
/// point of `X_p`. The graph of `X_p` is rebuilt over the common span
/// and an edge is marked when it completes an occurrence of `q`; the
/// inclusion holds iff no marked edge survives trimming.
pub fn sft_subset(p: &Pattern, q: &Pattern) -> Result<bool> {
    if p.alphabet() != q.alphabet() {
        return Err(Error::DomainMismatch(
            "subshift comparison requires a common alphabet".into(),
        ));
    }
    let (span_p, offsets_p) = span_offsets(p)?;
    let (span_q, offsets_q) = span_offsets(q)?;
    let window = span_p.max(span_q);
    let graph = DeBruijnGraph::build_with_window(p, window, &offsets_p)?;
    let k = p.alphabet().size();
    let shift = window - span_q;
    let marked: Vec<(usize, u8)> = offsets_q
        .iter()
        .map(|&(off, v)| (off + shift, v))
        .collect();
    let mut word = vec![0u8; window];
    for (e, alive) in graph.edge_alive.iter().enumerate() {
        if *alive {
            decode_into(e, k, &mut word);
            if marked.iter().all(|&(pos, v)| word[pos] == v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Image of an n-periodic point under the rule: position `i` of the
/// output reads `w((i + s) mod n)` for each memory offset `s`.
pub fn apply_periodic(rule: &LocalRule, word: &[u8]) -> Result<Vec<u8>> {
    if !rule.group().is_integers() {
        return Err(Error::UnsupportedCarrier(
            "periodic evaluation requires the carrier Z".into(),
        ));
    }
    if word.is_empty() {
        return Err(Error::Precondition("cyclic word must be nonempty".into()));
    }
    let n = word.len() as i64;
    let offsets: Vec<i64> = rule
        .memory()
        .iter()
        .map(|e| e.as_int().expect("rank-1 carrier"))
        .collect();
    let mut frag = vec![0u8; offsets.len()];
    Ok((0..word.len())
        .map(|i| {
            for (j, &s) in offsets.iter().enumerate() {
                frag[j] = word[(i as i64 + s).rem_euclid(n) as usize];
            }
            rule.evaluate(&frag)
        })
        .collect())
}

/// Whether `p` occurs in the cyclic word at any phase.
pub fn occurs_cyclically(p: &Pattern, word: &[u8]) -> Result<bool> {
    if !p.group().is_integers() {
        return Err(Error::UnsupportedCarrier(
            "cyclic occurrence requires the carrier Z".into(),
        ));
    }
    let n = word.len() as i64;
    let offsets: Vec<i64> = p
        .domain()
        .iter()
        .map(|e| e.as_int().expect("rank-1 carrier"))
        .collect();
    Ok((0..word.len()).any(|i| {
        offsets
            .iter()
            .zip(p.values())
            .all(|(&s, &v)| word[(i as i64 + s).rem_euclid(n) as usize] == v)
    }))
}

/// Scans all `k^len` cyclic words for one on which applying the rule
/// twice differs from applying it once; `None` means the rule acts
/// idempotently on every cyclic word of that length. The scan is
/// parallel when the `parallel` feature is on; the reported word is the
/// lexicographically first violation either way.
pub fn periodic_idempotency_violation(rule: &LocalRule, len: usize) -> Result<Option<Vec<u8>>> {
    scan_periodic(rule, len, false)
}

/// Sequential twin of [`periodic_idempotency_violation`].
pub fn periodic_idempotency_violation_seq(
    rule: &LocalRule,
    len: usize,
) -> Result<Option<Vec<u8>>> {
    scan_periodic(rule, len, true)
}

fn scan_periodic(rule: &LocalRule, len: usize, force_seq: bool) -> Result<Option<Vec<u8>>> {
    if !rule.group().is_integers() {
        return Err(Error::UnsupportedCarrier(
            "periodic evaluation requires the carrier Z".into(),
        ));
    }
    if len == 0 {
        return Err(Error::Precondition("cyclic length must be positive".into()));
    }
    let k = rule.alphabet().size();
    let total = crate::checked_table_len(k, len)?;
    let n = len as i64;
    // Wrapped read positions, resolved once: reads[i][j] is the cell that
    // position i reads for memory offset j.
    let reads: Vec<Vec<usize>> = (0..len)
        .map(|i| {
            rule.memory()
                .iter()
                .map(|e| {
                    let s = e.as_int().expect("rank-1 carrier");
                    (i as i64 + s).rem_euclid(n) as usize
                })
                .collect()
        })
        .collect();
    let width = rule.memory().len();
    // Workers scan in blocks so the scratch buffers are reused.
    const BLOCK: usize = 1 << 12;
    let blocks = total.div_ceil(BLOCK);
    let block_has_violation = |block: usize| {
        let mut w = vec![0u8; len];
        let mut once = vec![0u8; len];
        let mut frag = vec![0u8; width];
        let start = block * BLOCK;
        let end = (start + BLOCK).min(total);
        (start..end).any(|code| {
            decode_into(code, k, &mut w);
            for (i, row) in reads.iter().enumerate() {
                for (j, &pos) in row.iter().enumerate() {
                    frag[j] = w[pos];
                }
                once[i] = rule.evaluate(&frag);
            }
            reads.iter().enumerate().any(|(i, row)| {
                for (j, &pos) in row.iter().enumerate() {
                    frag[j] = once[pos];
                }
                rule.evaluate(&frag) != once[i]
            })
        })
    };
    let hit_block = if force_seq {
        par::find_first_seq(blocks, block_has_violation)
    } else {
        par::find_first(blocks, block_has_violation)
    };
    let Some(block) = hit_block else {
        return Ok(None);
    };
    // Recover the first violating word inside the block.
    let start = block * BLOCK;
    let end = (start + BLOCK).min(total);
    let mut w = vec![0u8; len];
    let mut once = vec![0u8; len];
    let mut frag = vec![0u8; width];
    for code in start..end {
        decode_into(code, k, &mut w);
        for (i, row) in reads.iter().enumerate() {
            for (j, &pos) in row.iter().enumerate() {
                frag[j] = w[pos];
            }
            once[i] = rule.evaluate(&frag);
        }
        let violated = reads.iter().enumerate().any(|(i, row)| {
            for (j, &pos) in row.iter().enumerate() {
                frag[j] = once[pos];
            }
            rule.evaluate(&frag) != once[i]
        });
        if violated {
            return Ok(Some(w));
        }
    }
    unreachable!("block reported a violation");
}

/// Span of `SS` for a pattern over `Z`: the window length of the
/// composition, used to size periodic-point checks.
pub fn composition_span(domain: &GroupSubset) -> Result<usize> {
    let ss = domain.product(domain)?;
    let ints: Vec<i64> = ss
        .iter()
        .map(|e| {
            e.as_int().ok_or_else(|| {
                Error::UnsupportedCarrier("composition span requires the carrier Z".into())
            })
        })
        .collect::<Result<Vec<i64>>>()?;
    let min = ints.iter().min().expect("nonempty");
    let max = ints.iter().max().expect("nonempty");
    Ok((max - min + 1) as usize)
}
