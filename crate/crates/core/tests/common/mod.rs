//! Test-only helpers: a random dataset generator and a brute-force
//! per-depth verifier that re-derives every step from the definitions,
//! sharing no code with the engine.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use adaptive_linkage::data::{Dataset, NormalizedDataset, SdMode};
use adaptive_linkage::dendrogram::Dendrogram;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TIE: f64 = 1e-9;

/// Datasets with n in [2, 40] and p in [1, 5]. Every third dataset sits on a
/// small integer grid (many exact ties), and roughly half get forced
/// duplicate rows.
pub fn random_suite(count: usize, seed: u64) -> Vec<NormalizedDataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|case| {
            let n = rng.gen_range(2..=40);
            let p = rng.gen_range(1..=5);
            let grid = case % 3 == 0;
            let mut rows: Vec<Vec<f64>> = (0..n)
                .map(|_| {
                    (0..p)
                        .map(|_| {
                            if grid {
                                rng.gen_range(0..5) as f64
                            } else {
                                rng.gen_range(-10.0..10.0)
                            }
                        })
                        .collect()
                })
                .collect();
            if rng.gen_bool(0.5) && n > 2 {
                let copies = rng.gen_range(1..=n / 2);
                for _ in 0..copies {
                    let from = rng.gen_range(0..n);
                    let to = rng.gen_range(0..n);
                    rows[to] = rows[from].clone();
                }
            }
            let labels: Vec<String> = (0..n).map(|i| format!("s{i:02}")).collect();
            let names = (0..p).map(|k| format!("x{k}")).collect();
            let data = Dataset::new(labels, names, rows).unwrap();
            let mode = if case % 2 == 0 {
                SdMode::Sample
            } else {
                SdMode::Population
            };
            data.normalize(mode)
                .unwrap_or_else(|_| NormalizedDataset::raw(&data))
        })
        .collect()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for k in 0..a.len() {
        s += (a[k] - b[k]).powi(2);
    }
    s.sqrt()
}

/// Neighbourhood of `i` by direct scan: all points within `cutoff`
/// (plus tolerance), nearest first, runs of distances within `TIE` of the
/// run's first distance ordered by index, `i` leading.
fn gamma(d: &[Vec<f64>], i: usize, cutoff: f64) -> Vec<usize> {
    let mut c: Vec<usize> = (0..d.len())
        .filter(|&j| j != i && d[i][j] <= cutoff + TIE)
        .collect();
    c.sort_by(|&a, &b| d[i][a].partial_cmp(&d[i][b]).unwrap().then(a.cmp(&b)));
    let mut out = vec![i];
    let mut k = 0;
    while k < c.len() {
        let anchor = d[i][c[k]];
        let mut run = Vec::new();
        while k < c.len() && d[i][c[k]] - anchor <= TIE {
            run.push(c[k]);
            k += 1;
        }
        run.sort();
        out.extend(run);
    }
    out
}

fn prefix_set(g: &[usize], v: usize) -> Option<BTreeSet<usize>> {
    (g.len() >= v).then(|| g[..v].iter().copied().collect())
}

/// Outcome of replaying one dendrogram against the definitions.
#[derive(Debug, Default)]
pub struct Verification {
    pub depths_checked: usize,
    pub violations: Vec<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Replays `tree` from the original coordinates, checking each depth.
///
/// Per depth: the cut-off is the max of row minima over a full matrix; every
/// neighbourhood has at least two members; the engine's groups are exactly
/// the maximal sets satisfying the extremely-close definition among all
/// neighbourhood prefixes; every pair with equal two-element
/// sub-neighbourhoods was merged together; and the homogeneity inequality
/// holds. Pseudo-points are recomputed here as means of their constituents.
pub fn verify(nd: &NormalizedDataset, tree: &Dendrogram) -> Verification {
    let mut out = Verification::default();
    let n = nd.len();
    let mut active: Vec<(Vec<f64>, Vec<usize>)> = nd
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), vec![i]))
        .collect();

    if tree.depth_count() > n.saturating_sub(1) {
        out.violations
            .push(format!("{} depths for {n} points", tree.depth_count()));
    }

    for record in tree.trace() {
        let depth = record.depth;
        let m = active.len();
        let d: Vec<Vec<f64>> = (0..m)
            .map(|i| (0..m).map(|j| dist(&active[i].0, &active[j].0)).collect())
            .collect();
        let mut cutoff = f64::MIN;
        for i in 0..m {
            let mut row_min = f64::MAX;
            for j in 0..m {
                if i != j && d[i][j] < row_min {
                    row_min = d[i][j];
                }
            }
            if row_min > cutoff {
                cutoff = row_min;
            }
        }
        if (cutoff - record.cutoff).abs() > 1e-12 {
            out.violations.push(format!(
                "depth {depth}: cut-off {} vs brute force {cutoff}",
                record.cutoff
            ));
        }

        let gammas: Vec<Vec<usize>> = (0..m).map(|i| gamma(&d, i, cutoff)).collect();
        for (i, g) in gammas.iter().enumerate() {
            if g.len() < 2 {
                out.violations
                    .push(format!("depth {depth}: neighbourhood of {i} has one member"));
            }
        }

        let mut valid: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for g in &gammas {
            for v in 2..=g.len() {
                let s = prefix_set(g, v).unwrap();
                if s.iter().all(|&k| prefix_set(&gammas[k], v).as_ref() == Some(&s)) {
                    valid.insert(s);
                }
            }
        }
        let maximal: BTreeSet<BTreeSet<usize>> = valid
            .iter()
            .filter(|s| !valid.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
            .cloned()
            .collect();

        // engine groups in active-index terms
        let mut engine: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for group in &record.groups {
            let members: BTreeSet<usize> = (0..m)
                .filter(|&i| active[i].1.iter().all(|l| group.contains(l)))
                .collect();
            let covered: usize = members.iter().map(|&i| active[i].1.len()).sum();
            if covered != group.len() {
                out.violations.push(format!(
                    "depth {depth}: group {group:?} is not a union of active points"
                ));
            }
            engine.insert(members);
        }
        if engine.is_empty() {
            out.violations.push(format!("depth {depth}: no groups"));
        }
        if engine != maximal {
            out.violations.push(format!(
                "depth {depth}: engine groups {engine:?} != definition {maximal:?}"
            ));
        }
        let mut seen = BTreeSet::new();
        for s in &engine {
            for &i in s {
                if !seen.insert(i) {
                    out.violations
                        .push(format!("depth {depth}: point {i} in two groups"));
                }
            }
        }

        for i in 0..m {
            for j in (i + 1)..m {
                if prefix_set(&gammas[i], 2) == prefix_set(&gammas[j], 2)
                    && !engine.iter().any(|s| s.contains(&i) && s.contains(&j))
                {
                    out.violations
                        .push(format!("depth {depth}: pair ({i}, {j}) left unmerged"));
                }
            }
        }

        for s in &engine {
            for &i in s {
                for &k in s {
                    for j in (0..m).filter(|j| !s.contains(j)) {
                        if d[i][k] > d[i][j] + TIE || d[i][k] > d[k][j] + TIE {
                            out.violations.push(format!(
                                "depth {depth}: homogeneity fails for ({i}, {k}) vs {j}"
                            ));
                        }
                    }
                }
            }
        }

        let mut next: Vec<(Vec<f64>, Vec<usize>)> = (0..m)
            .filter(|i| !engine.iter().any(|s| s.contains(i)))
            .map(|i| active[i].clone())
            .collect();
        for s in &engine {
            let dim = active[0].0.len();
            let mut c = vec![0.0; dim];
            let mut leaves = Vec::new();
            for &i in s {
                for k in 0..dim {
                    c[k] += active[i].0[k];
                }
                leaves.extend(active[i].1.iter().copied());
            }
            for x in &mut c {
                *x /= s.len() as f64;
            }
            leaves.sort();
            next.push((c, leaves));
        }
        next.sort_by_key(|(_, l)| l[0]);
        active = next;
        out.depths_checked += 1;
    }

    if n > 0 && active.len() != 1 {
        out.violations
            .push(format!("run ended with {} active points", active.len()));
    }
    out
}

/// Invariants checked by stepping the engine's own states.
///
/// Covers neighbourhood size, at least one merge per step, termination in at
/// most `n - 1` steps, homogeneity, disjoint groups, the leaf partition,
/// mean coordinates (1e-12) and bit-for-bit determinism.
pub fn check_properties(nd: &NormalizedDataset) -> Vec<String> {
    use adaptive_linkage::adaptive::{build_dendrogram, extremely_close_sets, ClusterState};

    let mut bad = Vec::new();
    let n = nd.len();
    let mut state = ClusterState::initial(nd).unwrap();
    let mut steps = 0;
    while state.len() > 1 {
        let m = state.len();
        let matrix = state.matrix().clone();
        let nbs = state.neighborhoods().unwrap();
        for nb in &nbs {
            if nb.len() < 2 {
                bad.push(format!("step {steps}: neighbourhood of {} too small", nb.center));
            }
            if nb.members[0] != nb.center || nb.distances[0] != 0.0 {
                bad.push(format!("step {steps}: neighbourhood of {} does not lead with itself", nb.center));
            }
            if nb.distances.windows(2).any(|w| w[1] < w[0] - TIE) {
                bad.push(format!("step {steps}: neighbourhood of {} out of order", nb.center));
            }
            if nb.distances.iter().any(|&x| x > nb.cutoff + TIE) {
                bad.push(format!("step {steps}: neighbourhood of {} exceeds cut-off", nb.center));
            }
        }
        let groups = extremely_close_sets(&nbs);
        if groups.is_empty() {
            bad.push(format!("step {steps}: no extremely close set among {m} points"));
            break;
        }
        let mut used = vec![false; m];
        for g in &groups {
            for &i in g.members() {
                if std::mem::replace(&mut used[i], true) {
                    bad.push(format!("step {steps}: point {i} in two groups"));
                }
            }
            for &i in g.members() {
                for &k in g.members() {
                    for j in (0..m).filter(|j| !g.members().contains(j)) {
                        if matrix.get(i, k) > matrix.get(i, j) + TIE
                            || matrix.get(i, k) > matrix.get(k, j) + TIE
                        {
                            bad.push(format!("step {steps}: homogeneity ({i},{k}) vs {j}"));
                        }
                    }
                }
            }
        }

        let (next, record) = match state.cluster_step() {
            Ok(x) => x,
            Err(e) => {
                bad.push(format!("step {steps}: {e}"));
                break;
            }
        };
        if record.groups.len() != groups.len() {
            bad.push(format!("step {steps}: record disagrees with groups"));
        }
        for p in next.points().iter().filter(|p| p.formed_at_depth == next.depth()) {
            let parts: Vec<_> = state
                .points()
                .iter()
                .filter(|q| q.leaves.iter().all(|l| p.leaves.contains(l)))
                .collect();
            for k in 0..p.coords.len() {
                let mean = parts.iter().map(|q| q.coords[k]).sum::<f64>() / parts.len() as f64;
                if (mean - p.coords[k]).abs() > 1e-12 {
                    bad.push(format!("step {steps}: pseudo-point coords are not the mean"));
                }
            }
        }
        let mut leaves: Vec<usize> = next.points().iter().flat_map(|p| p.leaves.clone()).collect();
        leaves.sort();
        if leaves != (0..n).collect::<Vec<_>>() {
            bad.push(format!("step {steps}: leaves do not partition the input"));
        }
        if next.len() >= m {
            bad.push(format!("step {steps}: point count did not shrink"));
        }
        state = next;
        steps += 1;
        if steps > n.saturating_sub(1) {
            bad.push(format!("more than {} steps", n - 1));
            break;
        }
    }

    let a = build_dendrogram(nd).unwrap();
    let b = build_dendrogram(nd).unwrap();
    let bits = |d: &Dendrogram| -> Vec<(usize, u64, Vec<Vec<usize>>)> {
        d.trace()
            .iter()
            .map(|r| (r.depth, r.cutoff.to_bits(), r.groups.clone()))
            .collect()
    };
    if bits(&a) != bits(&b) {
        bad.push("two runs differ".into());
    }
    if a.depth_count() != steps {
        bad.push("dendrogram depth differs from stepped run".into());
    }
    bad
}
