//! Brute-force reference implementations working on dense adjacency
//! matrices, plus an enumerator of small connected graphs up to isomorphism.
//! Nothing here calls into the library's algorithms.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashSet;

/// Dense symmetric adjacency matrix.
#[derive(Debug, Clone)]
pub struct Dense {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Dense {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Dense {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u != v {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
        Dense { n, adj }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&x| x).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Floyd-Warshall hop distances; `usize::MAX` when unreachable.
    pub fn distances(&self) -> Vec<Vec<usize>> {
        let inf = usize::MAX;
        let mut d = vec![vec![inf; self.n]; self.n];
        for i in 0..self.n {
            d[i][i] = 0;
            for j in 0..self.n {
                if self.adj[i][j] {
                    d[i][j] = 1;
                }
            }
        }
        for k in 0..self.n {
            for i in 0..self.n {
                for j in 0..self.n {
                    if d[i][k] != inf && d[k][j] != inf && d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d
    }
}

/// Closeness `(n-1)/sum dist` from Floyd-Warshall; `None` if disconnected.
pub fn closeness(g: &Dense) -> Option<Vec<f64>> {
    let d = g.distances();
    (0..g.n)
        .map(|v| {
            let mut total = 0usize;
            for u in 0..g.n {
                if d[v][u] == usize::MAX {
                    return None;
                }
                total += d[v][u];
            }
            Some(if total == 0 {
                0.0
            } else {
                (g.n - 1) as f64 / total as f64
            })
        })
        .collect()
}

fn walk(
    g: &Dense,
    target: usize,
    budget: usize,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    if last == target {
        found.push(path.clone());
        return;
    }
    if path.len() - 1 == budget {
        return;
    }
    for w in 0..g.n {
        if g.adj[last][w] && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            walk(g, target, budget, path, on_path, found);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// Enumerates every simple path of minimum length between each unordered pair
/// and credits interior vertices with their share of those paths.
pub fn betweenness(g: &Dense) -> Vec<f64> {
    let d = g.distances();
    let mut score = vec![0.0; g.n];
    for s in 0..g.n {
        for t in s + 1..g.n {
            if d[s][t] == usize::MAX {
                continue;
            }
            let mut found = Vec::new();
            let mut on_path = vec![false; g.n];
            on_path[s] = true;
            walk(g, t, d[s][t], &mut vec![s], &mut on_path, &mut found);
            let shortest: Vec<&Vec<usize>> =
                found.iter().filter(|p| p.len() - 1 == d[s][t]).collect();
            let total = shortest.len() as f64;
            for p in shortest {
                for &v in &p[1..p.len() - 1] {
                    score[v] += 1.0 / total;
                }
            }
        }
    }
    score
}

/// Newman's pairwise form `(1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j)`.
pub fn modularity(g: &Dense, labels: &[i64]) -> f64 {
    let m2 = 2.0 * g.edge_count() as f64;
    let mut q = 0.0;
    for i in 0..g.n {
        for j in 0..g.n {
            if labels[i] == labels[j] {
                let a = if g.adj[i][j] { 1.0 } else { 0.0 };
                q += a - (g.degree(i) * g.degree(j)) as f64 / m2;
            }
        }
    }
    q / m2
}

fn distinct(labels: &[i64]) -> Vec<i64> {
    let mut d = labels.to_vec();
    d.sort_unstable();
    d.dedup();
    d
}

/// Mean over communities of `cut / min(vol, vol_complement)`, 0 when uncut.
pub fn conductance(g: &Dense, labels: &[i64]) -> f64 {
    let communities = distinct(labels);
    let mut sum = 0.0;
    for &c in &communities {
        let (mut cut, mut vol, mut vol_out) = (0usize, 0usize, 0usize);
        for i in 0..g.n {
            for j in 0..g.n {
                if !g.adj[i][j] {
                    continue;
                }
                if labels[i] == c {
                    vol += 1;
                    if labels[j] != c {
                        cut += 1;
                    }
                } else {
                    vol_out += 1;
                }
            }
        }
        sum += if cut == 0 {
            0.0
        } else {
            cut as f64 / vol.min(vol_out) as f64
        };
    }
    sum / communities.len() as f64
}

/// Mean over communities of `cut / (|S| (n - |S|))`.
pub fn cut_ratio(g: &Dense, labels: &[i64]) -> f64 {
    let communities = distinct(labels);
    let mut sum = 0.0;
    for &c in &communities {
        let size = labels.iter().filter(|&&l| l == c).count();
        let mut cut = 0usize;
        for i in 0..g.n {
            for j in 0..g.n {
                if g.adj[i][j] && labels[i] == c && labels[j] != c {
                    cut += 1;
                }
            }
        }
        if size < g.n {
            sum += cut as f64 / (size * (g.n - size)) as f64;
        }
    }
    sum / communities.len() as f64
}

/// Permanence straight from its definition.
pub fn permanence(g: &Dense, labels: &[i64], v: usize) -> f64 {
    let own = labels[v];
    if labels.iter().filter(|&&l| l == own).count() == 1 {
        return 0.0;
    }
    let degree = g.degree(v);
    if degree == 0 {
        return 0.0;
    }
    let inner: Vec<usize> = (0..g.n)
        .filter(|&u| g.adj[v][u] && labels[u] == own)
        .collect();
    let mut e_max = 0;
    for c in distinct(labels) {
        if c != own {
            let count = (0..g.n).filter(|&u| g.adj[v][u] && labels[u] == c).count();
            e_max = e_max.max(count);
        }
    }
    let e_max = e_max.max(1);
    let k = inner.len();
    let c_in = if k < 2 {
        0.0
    } else {
        let mut links = 0;
        for a in 0..k {
            for b in a + 1..k {
                if g.adj[inner[a]][inner[b]] {
                    links += 1;
                }
            }
        }
        links as f64 / (k * (k - 1) / 2) as f64
    };
    k as f64 / (e_max * degree) as f64 - (1.0 - c_in)
}

/// PageRank by solving `(I - d P^T) x = (1 - d) / n` with Gaussian elimination.
/// Requires every vertex to have degree at least 1.
pub fn pagerank(g: &Dense, damping: f64) -> Vec<f64> {
    let n = g.n;
    let mut a = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        a[i][i] = 1.0;
        for j in 0..n {
            if g.adj[j][i] {
                a[i][j] -= damping / g.degree(j) as f64;
            }
        }
        a[i][n] = (1.0 - damping) / n as f64;
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let f = a[row][col] / a[col][col];
                for k in col..=n {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
    }
    (0..n).map(|i| a[i][n] / a[i][i]).collect()
}

/// Canonical code of a graph on at most 8 vertices given as neighbor bitmasks.
fn canonical_code(n: usize, adj: &[u16]) -> u64 {
    // colour refinement gives an isomorphism-invariant ordered partition
    let mut color: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = (0..n)
                    .filter(|&u| adj[v] >> u & 1 == 1)
                    .map(|u| color[u])
                    .collect();
                around.sort_unstable();
                (color[v], around)
            })
            .collect();
        let mut unique = signatures.clone();
        unique.sort();
        unique.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| unique.binary_search(s).unwrap())
            .collect();
        let classes_before = {
            let mut c = color.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        let stable = unique.len() == classes_before;
        color = next;
        if stable {
            break;
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| color[v]);
    for v in order {
        match cells.last_mut() {
            Some(cell) if color[cell[0]] == color[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = 0u64;
    let mut placement = Vec::with_capacity(n);
    permute_cells(&cells, 0, &mut placement, adj, &mut best);
    best | (n as u64) << 40
}

fn permute_cells(
    cells: &[Vec<usize>],
    at: usize,
    placement: &mut Vec<usize>,
    adj: &[u16],
    best: &mut u64,
) {
    if at == cells.len() {
        let n = placement.len();
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[placement[i]] >> placement[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        *best = (*best).max(code);
        return;
    }
    let mut cell = cells[at].clone();
    heap_permutations(&mut cell, cells[at].len(), &mut |perm| {
        let mark = placement.len();
        placement.extend_from_slice(perm);
        permute_cells(cells, at + 1, placement, adj, best);
        placement.truncate(mark);
    });
}

fn heap_permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// Every connected graph on `1..=max_n` vertices (max 8), one per isomorphism
/// class, as `(n, edges)`.
pub fn connected_graphs(max_n: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    assert!(max_n <= 8);
    let mut layer: Vec<Vec<u16>> = vec![vec![0]];
    let mut out = vec![(1, Vec::new())];
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &layer {
            for subset in 1u16..(1 << (n - 1)) {
                let mut adj = g.clone();
                adj.push(subset);
                for (u, mask) in adj.iter_mut().enumerate().take(n - 1) {
                    if subset >> u & 1 == 1 {
                        *mask |= 1 << (n - 1);
                    }
                }
                if seen.insert(canonical_code(n, &adj)) {
                    next.push(adj);
                }
            }
        }
        for adj in &next {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if adj[u] >> v & 1 == 1 {
                        edges.push((u, v));
                    }
                }
            }
            out.push((n, edges));
        }
        layer = next;
    }
    out
}

/// A few deterministic labelings of `n` vertices for scoring sweeps.
pub fn labelings(n: usize) -> Vec<Vec<i64>> {
    vec![
        vec![0; n],
        (0..n as i64).map(|v| v % 2).collect(),
        (0..n as i64).map(|v| v % 3).collect(),
        (0..n).map(|v| i64::from(v >= n / 2)).collect(),
        (0..n as i64).collect(),
    ]
}
