//! Strategy 2: centralized interference management.
//!
//! From the links whose direct coefficient exceeds `t = (1 - alpha) log n`,
//! build an undirected graph with an edge wherever both mutual cross gains
//! are at most `delta`, and activate a maximum clique of it. Includes the
//! random-graph edge/clique-number predictions and the delta-optimized
//! centralized tradeoff curve.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::fading::{ChannelMatrix, FadingModel, Seed};
use crate::network::{NetworkParams, PowerVector};
use crate::numeric::golden_section_max;
use crate::scaling::{log_spaced, Optimum};

/// Largest vertex count the exact branch-and-bound solver accepts.
pub const EXACT_CLIQUE_CAP: usize = 150;

/// Candidate filtering and interference-cap parameters of Strategy 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralizedConfig {
    alpha: f64,
    delta: f64,
}

impl CentralizedConfig {
    pub fn new(alpha: f64, delta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha < 1.0) {
            return Err(Error::invalid(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::invalid(format!("delta must be > 0, got {delta}")));
        }
        Ok(CentralizedConfig { alpha, delta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Candidate threshold `t = (1 - alpha) log n`.
    pub fn activation_threshold(&self, n: usize) -> f64 {
        (1.0 - self.alpha) * (n as f64).ln()
    }
}

/// Undirected interference graph over a candidate set, stored as bitset
/// adjacency rows. `pi` is the model edge probability of the generating
/// Rayleigh cap (`(1 - e^{-delta})^2`).
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceGraph {
    vertices: Vec<usize>,
    words: usize,
    adj: Vec<u64>,
    pi: f64,
}

impl InterferenceGraph {
    fn empty(vertices: Vec<usize>, pi: f64) -> Self {
        let order = vertices.len();
        let words = order.div_ceil(64);
        InterferenceGraph {
            vertices,
            words,
            adj: vec![0u64; order * words],
            pi,
        }
    }

    fn set_edge(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        self.adj[a * self.words + b / 64] |= 1 << (b % 64);
        self.adj[b * self.words + a / 64] |= 1 << (a % 64);
    }

    /// Sample a `G(order, pi)` random graph with independent edges.
    pub fn random(order: usize, pi: f64, seed: Seed) -> Result<Self> {
        if !(0.0..=1.0).contains(&pi) {
            return Err(Error::invalid(format!("pi must lie in [0, 1], got {pi}")));
        }
        let mut g = Self::empty((0..order).collect(), pi);
        let mut rng = seed.rng();
        let scale = 1.0 / (1u64 << 53) as f64;
        for a in 0..order {
            for b in (a + 1)..order {
                let u = ((rng.next_u64() >> 11) as f64 + 0.5) * scale;
                if u < pi {
                    g.set_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// The candidate link ids, in vertex order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Model edge probability attached at construction.
    pub fn pi(&self) -> f64 {
        self.pi
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Adjacency between local vertex indices.
    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.order()).map(|v| self.degree(v)).sum();
        total / 2
    }

    /// Structural sanity: symmetric adjacency with an empty diagonal.
    pub fn is_symmetric_with_zero_diagonal(&self) -> bool {
        for a in 0..self.order() {
            if self.adjacent(a, a) {
                return false;
            }
            for b in (a + 1)..self.order() {
                if self.adjacent(a, b) != self.adjacent(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Check that `members` (local indices) form a clique.
    pub fn is_clique(&self, members: &[usize]) -> bool {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if !self.adjacent(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Candidate pool of Strategy 2: links whose direct coefficient exceeds
/// `t = (1 - alpha) log n`, where `n` is the diagonal length.
pub fn candidate_pool_from_diagonal(diagonal: &[f64], alpha: f64) -> Result<Vec<usize>> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let t = (1.0 - alpha) * (diagonal.len() as f64).ln();
    Ok((0..diagonal.len()).filter(|i| diagonal[*i] > t).collect())
}

pub fn candidate_pool(g: &ChannelMatrix, alpha: f64) -> Result<Vec<usize>> {
    candidate_pool_from_diagonal(&g.diagonal(), alpha)
}

/// Model probability that both mutual cross gains fall below `delta` under
/// Rayleigh fading: `pi = (1 - e^{-delta})^2`. Only derived for Rayleigh.
pub fn edge_probability(model: &FadingModel, delta: f64) -> Result<f64> {
    if !matches!(model, FadingModel::Rayleigh) {
        return Err(Error::invalid(
            "edge probability is derived for the Rayleigh model only",
        ));
    }
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::invalid(format!("delta must be >= 0, got {delta}")));
    }
    let one_minus_exp = -(-delta).exp_m1();
    Ok(one_minus_exp * one_minus_exp)
}

/// Build the interference graph over `pool`: vertices keep the pool's link
/// ids, and `i ~ j` iff `g_ij <= delta` and `g_ji <= delta`.
pub fn build_graph(g: &ChannelMatrix, pool: &[usize], delta: f64) -> Result<InterferenceGraph> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::invalid(format!("delta must be > 0, got {delta}")));
    }
    if pool.iter().any(|i| *i >= g.n()) {
        return Err(Error::invalid("pool index out of range"));
    }
    let pi = edge_probability(&FadingModel::Rayleigh, delta)?;
    let mut graph = InterferenceGraph::empty(pool.to_vec(), pi);
    for a in 0..pool.len() {
        for b in (a + 1)..pool.len() {
            if g.gain(pool[a], pool[b]) <= delta && g.gain(pool[b], pool[a]) <= delta {
                graph.set_edge(a, b);
            }
        }
    }
    // Fault injection for the selfcheck negative path: force edge (0, 1) in
    // one direction only so the symmetry check trips.
    #[cfg(feature = "fault-inject-graph")]
    if graph.order() >= 2 {
        graph.adj[0] |= 0b10;
        graph.adj[graph.words] &= !1u64;
    }
    Ok(graph)
}

/// How the returned clique was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueMethod {
    Exact,
    Greedy,
}

/// A clique of the interference graph. `members` hold the graph's link ids
/// (not local vertex indices), sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueResult {
    pub members: Vec<usize>,
    pub size: usize,
    pub method: CliqueMethod,
    /// Asymptotic clique-number prediction `2 log k / log(1/pi)` of the
    /// graph's `(order, pi)` pair, when defined.
    pub predicted_size: Option<f64>,
}

fn attach_prediction(graph: &InterferenceGraph) -> Option<f64> {
    clique_number_prediction(graph.order(), graph.pi()).ok()
}

fn finish_clique(
    graph: &InterferenceGraph,
    local: Vec<usize>,
    method: CliqueMethod,
) -> CliqueResult {
    debug_assert!(graph.is_clique(&local));
    let mut members: Vec<usize> = local.iter().map(|v| graph.vertices[*v]).collect();
    members.sort_unstable();
    CliqueResult {
        size: members.len(),
        members,
        method,
        predicted_size: attach_prediction(graph),
    }
}

/// Asymptotic clique number of `G(k, pi)`: `2 log k / log(1/pi)`.
pub fn clique_number_prediction(k: usize, pi: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid(format!("prediction needs k >= 2, got {k}")));
    }
    if !(pi > 0.0 && pi < 1.0) {
        return Err(Error::invalid(format!(
            "prediction needs 0 < pi < 1, got {pi}"
        )));
    }
    Ok(2.0 * (k as f64).ln() / (1.0 / pi).ln())
}

/// Bitset scratch used by the exact solver.
type Bits = Vec<u64>;

fn bits_contains(bits: &[u64], v: usize) -> bool {
    bits[v / 64] >> (v % 64) & 1 == 1
}

fn bits_clear(bits: &mut [u64], v: usize) {
    bits[v / 64] &= !(1u64 << (v % 64));
}

fn bits_is_empty(bits: &[u64]) -> bool {
    bits.iter().all(|w| *w == 0)
}

fn bits_first(bits: &[u64]) -> Option<usize> {
    for (i, w) in bits.iter().enumerate() {
        if *w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

struct ExactSolver<'g> {
    graph: &'g InterferenceGraph,
    words: usize,
    order: Vec<usize>,
    rows: Vec<u64>, // adjacency in permuted labels
    best: Vec<usize>,
    current: Vec<usize>,
}

impl<'g> ExactSolver<'g> {
    fn new(graph: &'g InterferenceGraph) -> Self {
        let n = graph.order();
        let words = n.div_ceil(64);
        // relabel by degree descending; dense vertices first tighten the
        // coloring bound early
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|v| (std::cmp::Reverse(graph.degree(*v)), *v));
        let mut rows = vec![0u64; n * words];
        for a in 0..n {
            for b in 0..n {
                if a != b && graph.adjacent(order[a], order[b]) {
                    rows[a * words + b / 64] |= 1 << (b % 64);
                }
            }
        }
        ExactSolver {
            graph,
            words,
            order,
            rows,
            best: Vec::new(),
            current: Vec::new(),
        }
    }

    fn neighbors(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Greedy coloring of the candidate set; returns vertices sorted by
    /// ascending color, with their color numbers (upper bounds on the clique
    /// extension within the remaining candidates).
    fn color_sort(&self, cand: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = cand.clone();
        let mut verts = Vec::new();
        let mut colors = Vec::new();
        let mut color = 0usize;
        while !bits_is_empty(&uncolored) {
            color += 1;
            let mut class = uncolored.clone();
            while let Some(v) = bits_first(&class) {
                bits_clear(&mut class, v);
                bits_clear(&mut uncolored, v);
                for (w, nb) in class.iter_mut().zip(self.neighbors(v)) {
                    *w &= !nb;
                }
                verts.push(v);
                colors.push(color);
            }
        }
        (verts, colors)
    }

    fn expand(&mut self, cand: &mut Bits) {
        if bits_is_empty(cand) {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        let (verts, colors) = self.color_sort(cand);
        for i in (0..verts.len()).rev() {
            if self.current.len() + colors[i] <= self.best.len() {
                return; // all remaining vertices have even smaller colors
            }
            let v = verts[i];
            self.current.push(v);
            let mut next = cand.clone();
            bits_clear(&mut next, v);
            // restrict to earlier-colored candidates intersected with N(v)
            for &later in &verts[i + 1..] {
                bits_clear(&mut next, later);
            }
            for (w, nb) in next.iter_mut().zip(self.neighbors(v)) {
                *w &= nb;
            }
            self.expand(&mut next);
            self.current.pop();
            bits_clear(cand, v);
        }
    }

    fn run(mut self) -> Vec<usize> {
        let n = self.graph.order();
        let mut cand: Bits = vec![0u64; self.words];
        for v in 0..n {
            cand[v / 64] |= 1 << (v % 64);
        }
        self.expand(&mut cand);
        self.best.iter().map(|v| self.order[*v]).collect()
    }
}

/// Exact maximum clique via branch and bound with greedy-coloring upper
/// bounds. Rejects graphs above [`EXACT_CLIQUE_CAP`] vertices.
pub fn max_clique_exact(graph: &InterferenceGraph) -> Result<CliqueResult> {
    let n = graph.order();
    if n > EXACT_CLIQUE_CAP {
        return Err(Error::ExactSolverCap {
            vertices: n,
            cap: EXACT_CLIQUE_CAP,
        });
    }
    if n == 0 {
        return Ok(CliqueResult {
            members: Vec::new(),
            size: 0,
            method: CliqueMethod::Exact,
            predicted_size: attach_prediction(graph),
        });
    }
    let local = ExactSolver::new(graph).run();
    Ok(finish_clique(graph, local, CliqueMethod::Exact))
}

/// Randomized degree-ordered greedy clique search with restarts.
///
/// Restart 0 walks the vertices in degree-descending order; later restarts
/// walk Fisher-Yates permutations of the seeded generator. The best clique
/// wins, ties resolved toward the lexicographically smallest member set, so
/// the result is a deterministic function of `(graph, restarts, seed)`.
pub fn max_clique_greedy(graph: &InterferenceGraph, restarts: usize, seed: Seed) -> CliqueResult {
    let n = graph.order();
    if n == 0 {
        return CliqueResult {
            members: Vec::new(),
            size: 0,
            method: CliqueMethod::Greedy,
            predicted_size: attach_prediction(graph),
        };
    }
    let restarts = restarts.max(1);
    let mut rng = seed.rng();
    let degree_order = {
        let mut o: Vec<usize> = (0..n).collect();
        o.sort_by_key(|v| (std::cmp::Reverse(graph.degree(*v)), *v));
        o
    };
    let mut best: Vec<usize> = Vec::new();
    let mut order = degree_order.clone();
    for restart in 0..restarts {
        if restart > 0 {
            order.copy_from_slice(&degree_order);
            for i in (1..n).rev() {
                let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                order.swap(i, j);
            }
        }
        let words = n.div_ceil(64);
        let mut cand: Bits = vec![u64::MAX; words];
        let mut clique = Vec::new();
        for &v in &order {
            if v < n && bits_contains(&cand, v) {
                clique.push(v);
                for (w, nb) in cand.iter_mut().zip(graph.row(v)) {
                    *w &= nb;
                }
            }
        }
        clique.sort_unstable();
        if clique.len() > best.len() || (clique.len() == best.len() && clique < best) {
            best = clique;
        }
    }
    finish_clique(graph, best, CliqueMethod::Greedy)
}

/// Solver selection for Strategy 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    Exact,
    Greedy {
        restarts: usize,
    },
    /// Exact up to [`EXACT_CLIQUE_CAP`] vertices, greedy above.
    Auto {
        restarts: usize,
    },
}

impl Default for SolverChoice {
    fn default() -> Self {
        SolverChoice::Auto { restarts: 64 }
    }
}

pub fn solve_max_clique(
    graph: &InterferenceGraph,
    choice: SolverChoice,
    seed: Seed,
) -> Result<CliqueResult> {
    match choice {
        SolverChoice::Exact => max_clique_exact(graph),
        SolverChoice::Greedy { restarts } => Ok(max_clique_greedy(graph, restarts, seed)),
        SolverChoice::Auto { restarts } => {
            if graph.order() <= EXACT_CLIQUE_CAP {
                max_clique_exact(graph)
            } else {
                Ok(max_clique_greedy(graph, restarts, seed))
            }
        }
    }
}

/// Full Strategy 2 on a materialized matrix: candidate pool, interference
/// graph, maximum clique, on-off powers. An empty pool yields all-off.
pub fn strategy2_select(
    g: &ChannelMatrix,
    config: &CentralizedConfig,
    choice: SolverChoice,
    seed: Seed,
    params: &NetworkParams,
) -> Result<PowerVector> {
    let pool = candidate_pool(g, config.alpha())?;
    let mut flags = vec![false; g.n()];
    if !pool.is_empty() {
        let graph = build_graph(g, &pool, config.delta())?;
        let clique = solve_max_clique(&graph, choice, seed)?;
        for link in clique.members {
            flags[link] = true;
        }
    }
    PowerVector::from_active(flags, params.power)
}

/// Coefficients of the centralized predictions at `(alpha, delta)`:
/// `kappa` scales the active count (`k_hat ~ kappa log n`), `lambda` is the
/// per-link rate, and their product multiplies `log n` in the sum-rate lower
/// bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralizedPrediction {
    pub kappa: f64,
    pub lambda: f64,
    pub sum_rate_coefficient: f64,
}

pub fn centralized_predictions(alpha: f64, delta: f64) -> Result<CentralizedPrediction> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::invalid(format!("delta must be > 0, got {delta}")));
    }
    let exp_neg = (-delta).exp();
    if exp_neg == 0.0 {
        return Err(Error::invalid(format!(
            "delta = {delta} saturates the edge probability; predictions degenerate"
        )));
    }
    let log_one_minus = (-exp_neg).ln_1p(); // ln(1 - e^{-delta}) < 0
    let kappa = -alpha / log_one_minus;
    let conditional_mean = FadingModel::Rayleigh.conditional_mean_below(delta)?;
    let lambda = (1.0 - (1.0 - alpha) * log_one_minus / (alpha * conditional_mean)).ln();
    Ok(CentralizedPrediction {
        kappa,
        lambda,
        sum_rate_coefficient: kappa * lambda,
    })
}

/// Log-spaced delta grid for [`optimize_delta`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for DeltaGrid {
    fn default() -> Self {
        DeltaGrid {
            lo: 1e-8,
            hi: 20.0,
            points: 10_000,
        }
    }
}

/// Maximize the sum-rate coefficient `kappa(delta) lambda(delta)` over the
/// delta grid, golden-section refined to absolute delta tolerance `1e-4`.
/// The optimum wanders to tiny deltas as `alpha` approaches 1, hence the
/// logarithmic grid.
pub fn optimize_delta(alpha: f64, grid: &DeltaGrid) -> Result<Optimum> {
    if !(grid.lo > 0.0 && grid.hi > grid.lo && grid.points >= 16) {
        return Err(Error::invalid("bad delta grid"));
    }
    let objective = |s: f64| match centralized_predictions(alpha, s.exp()) {
        Ok(p) => p.sum_rate_coefficient,
        Err(_) => f64::NEG_INFINITY,
    };
    let deltas = log_spaced(grid.lo, grid.hi, grid.points);
    let mut best_idx = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for (i, d) in deltas.iter().enumerate() {
        let v = objective(d.ln());
        if v > best_val {
            best_val = v;
            best_idx = i;
        }
    }
    if best_idx == 0 || best_idx == deltas.len() - 1 {
        return Err(Error::NoInteriorMaximum(format!(
            "delta argmax for alpha = {alpha} sits on the grid boundary"
        )));
    }
    let lo = deltas[best_idx - 1].ln();
    let hi = deltas[best_idx + 1].ln();
    let xtol = (1e-4 / deltas[best_idx + 1]).clamp(1e-12, 1e-3);
    let (s_star, value) = golden_section_max(objective, lo, hi, xtol);
    Ok(Optimum {
        argument: s_star.exp(),
        value,
    })
}

/// One point of the centralized tradeoff frontier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffPoint {
    pub alpha: f64,
    pub delta_star: f64,
    pub kappa: f64,
    pub lambda: f64,
}

/// Default alpha grid for the centralized frontier: 64 log-spaced points in
/// `[0.02, 0.98]`.
pub fn default_alpha_grid() -> Vec<f64> {
    log_spaced(0.02, 0.98, 64)
}

/// For each alpha, optimize delta and emit `(kappa, lambda)`; points come
/// back sorted by kappa. Alphas whose optimizer fails are skipped with a
/// logged warning.
pub fn tradeoff_centralized(alphas: &[f64]) -> Result<Vec<TradeoffPoint>> {
    let mut points = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let opt = match optimize_delta(alpha, &DeltaGrid::default()) {
            Ok(opt) => opt,
            Err(err) => {
                log::warn!("skipping alpha = {alpha}: {err}");
                continue;
            }
        };
        let pred = centralized_predictions(alpha, opt.argument)?;
        points.push(TradeoffPoint {
            alpha,
            delta_star: opt.argument,
            kappa: pred.kappa,
            lambda: pred.lambda,
        });
    }
    points.sort_by(|a, b| a.kappa.partial_cmp(&b.kappa).expect("finite kappas"));
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fading::sample_channel_matrix;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn seeded_graph(order: usize, pi: f64, stream: u64) -> InterferenceGraph {
        InterferenceGraph::random(order, pi, Seed::new(1234, stream)).unwrap()
    }

    /// Exhaustive subset-enumeration oracle, independent of the solver.
    fn brute_force_clique_number(graph: &InterferenceGraph) -> usize {
        let n = graph.order();
        assert!(n <= 20, "oracle is exponential");
        let mut best = 0usize;
        for mask in 1u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if graph.is_clique(&members) {
                best = size;
            }
        }
        best
    }

    fn complete_graph(order: usize) -> InterferenceGraph {
        let mut g = InterferenceGraph::empty((0..order).collect(), 1.0);
        for a in 0..order {
            for b in (a + 1)..order {
                g.set_edge(a, b);
            }
        }
        g
    }

    fn cycle_graph(order: usize) -> InterferenceGraph {
        let mut g = InterferenceGraph::empty((0..order).collect(), 0.5);
        for a in 0..order {
            g.set_edge(a, (a + 1) % order);
        }
        g
    }

    #[test]
    fn pool_examples() {
        // alpha near 1 drops the threshold to almost zero: everything joins
        let g = sample_channel_matrix(50, FadingModel::Rayleigh, Seed::new(5, 0)).unwrap();
        let pool = candidate_pool(&g, 0.999).unwrap();
        assert_eq!(pool.len(), 50);

        // diagonal entirely below the threshold: empty pool
        let low = ChannelMatrix::from_rows(vec![vec![0.1, 9.0], vec![9.0, 0.2]]).unwrap();
        let pool = candidate_pool(&low, 0.5).unwrap();
        assert!(pool.is_empty());

        assert!(candidate_pool(&low, 0.0).is_err());
        assert!(candidate_pool(&low, 1.0).is_err());
    }

    #[test]
    fn edge_probability_examples() {
        assert_eq!(edge_probability(&FadingModel::Rayleigh, 0.0).unwrap(), 0.0);
        assert_relative_eq!(
            edge_probability(&FadingModel::Rayleigh, std::f64::consts::LN_2).unwrap(),
            0.25,
            max_relative = 1e-14
        );
        let ln = FadingModel::log_normal(0.0, 1.0).unwrap();
        assert!(edge_probability(&ln, 1.0).is_err());
    }

    #[test]
    fn graph_construction_examples() {
        // 3 links, exactly one qualifying pair (0, 2)
        let g = ChannelMatrix::from_rows(vec![
            vec![5.0, 3.0, 0.2],
            vec![0.1, 5.0, 3.0],
            vec![0.3, 3.0, 5.0],
        ])
        .unwrap();
        let graph = build_graph(&g, &[0, 1, 2], 0.5).unwrap();
        assert_eq!(graph.edge_count(), 1);
        assert!(graph.adjacent(0, 2) && graph.adjacent(2, 0));
        assert!(!graph.adjacent(0, 1) && !graph.adjacent(1, 2));
        assert!(graph.is_symmetric_with_zero_diagonal());

        // delta above every cross gain: complete; below: edgeless
        let m = sample_channel_matrix(12, FadingModel::Rayleigh, Seed::new(6, 0)).unwrap();
        let pool: Vec<usize> = (0..12).collect();
        let complete = build_graph(&m, &pool, 1e9).unwrap();
        assert_eq!(complete.edge_count(), 12 * 11 / 2);
        let empty = build_graph(&m, &pool, 1e-12).unwrap();
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn graphs_stay_symmetric() {
        for stream in 0..20 {
            let m = sample_channel_matrix(40, FadingModel::Rayleigh, Seed::new(7, stream)).unwrap();
            let pool: Vec<usize> = (0..40).step_by(2).collect();
            let graph = build_graph(&m, &pool, 0.8).unwrap();
            assert!(graph.is_symmetric_with_zero_diagonal());
        }
    }

    #[test]
    fn exact_clique_trivial_graphs() {
        for m in [1usize, 2, 5, 9] {
            let result = max_clique_exact(&complete_graph(m)).unwrap();
            assert_eq!(result.size, m);
            assert_eq!(result.members, (0..m).collect::<Vec<_>>());
        }
        let edgeless = InterferenceGraph::empty((0..7).collect(), 0.0);
        assert_eq!(max_clique_exact(&edgeless).unwrap().size, 1);
        // 5-cycle has clique number 2 (verified by enumeration)
        let c5 = cycle_graph(5);
        assert_eq!(brute_force_clique_number(&c5), 2);
        assert_eq!(max_clique_exact(&c5).unwrap().size, 2);
    }

    #[test]
    fn exact_clique_matches_enumeration_oracle() {
        for (stream, pi) in [(0u64, 0.3), (1, 0.5), (2, 0.7), (3, 0.5), (4, 0.9)] {
            let graph = seeded_graph(16, pi, stream);
            let oracle = brute_force_clique_number(&graph);
            let got = max_clique_exact(&graph).unwrap();
            assert_eq!(got.size, oracle, "stream {stream}");
            assert!(graph.is_clique(&got.members));
        }
    }

    #[test]
    fn exact_clique_respects_cap() {
        let big = InterferenceGraph::empty((0..EXACT_CLIQUE_CAP + 1).collect(), 0.5);
        assert!(matches!(
            max_clique_exact(&big),
            Err(Error::ExactSolverCap { .. })
        ));
    }

    #[test]
    fn greedy_clique_properties() {
        let complete = complete_graph(9);
        let greedy = max_clique_greedy(&complete, 4, Seed::new(9, 0));
        assert_eq!(greedy.size, 9, "greedy cannot miss on a complete graph");

        // members verified pairwise adjacent; deterministic given seed;
        // never above the exact optimum
        for stream in 0..20 {
            let graph = seeded_graph(100, 0.5, 100 + stream);
            let a = max_clique_greedy(&graph, 64, Seed::new(42, stream));
            let b = max_clique_greedy(&graph, 64, Seed::new(42, stream));
            assert_eq!(a, b);
            let local: Vec<usize> = a.members.clone(); // vertices are 0..k here
            assert!(graph.is_clique(&local));
            let exact = max_clique_exact(&graph).unwrap();
            assert!(a.size <= exact.size);
            assert!(
                a.size as f64 >= 0.7 * exact.size as f64,
                "greedy {} vs exact {} on stream {stream}",
                a.size,
                exact.size
            );
        }
    }

    #[test]
    fn clique_prediction_examples() {
        let p = clique_number_prediction(100, 0.5).unwrap();
        assert_abs_diff_eq!(p, 13.2877, epsilon = 1e-3);
        // normalization: log(1/pi) = 2 log k collapses the prediction to 1
        let k = 10usize;
        let pi = (-2.0 * (k as f64).ln()).exp();
        assert_relative_eq!(
            clique_number_prediction(k, pi).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        // doubling k adds exactly 2 log 2 / log(1/pi)
        let pi = 0.37;
        let bump =
            clique_number_prediction(64, pi).unwrap() - clique_number_prediction(32, pi).unwrap();
        assert_relative_eq!(
            bump,
            2.0 * std::f64::consts::LN_2 / (1.0 / pi).ln(),
            max_relative = 1e-12
        );
        assert!(clique_number_prediction(1, 0.5).is_err());
        assert!(clique_number_prediction(10, 0.0).is_err());
        assert!(clique_number_prediction(10, 1.0).is_err());
    }

    #[test]
    fn strategy2_extreme_deltas() {
        let params = NetworkParams::default();
        let g = sample_channel_matrix(60, FadingModel::Rayleigh, Seed::new(77, 0)).unwrap();
        let alpha = 0.7;

        // delta far above every cross gain: the whole pool goes active
        let pool = candidate_pool(&g, alpha).unwrap();
        let config = CentralizedConfig::new(alpha, 500.0).unwrap();
        let p = strategy2_select(
            &g,
            &config,
            SolverChoice::default(),
            Seed::new(1, 0),
            &params,
        )
        .unwrap();
        assert_eq!(p.active_indices(), pool);

        // delta below every cross gain: edgeless graph, a single survivor
        let config = CentralizedConfig::new(alpha, 1e-12).unwrap();
        let p = strategy2_select(
            &g,
            &config,
            SolverChoice::default(),
            Seed::new(1, 0),
            &params,
        )
        .unwrap();
        assert_eq!(p.active_count(), 1);

        // empty pool: all off
        let low = ChannelMatrix::from_rows(vec![vec![0.1, 0.4], vec![0.4, 0.1]]).unwrap();
        let config = CentralizedConfig::new(0.5, 1.0).unwrap();
        let p = strategy2_select(
            &low,
            &config,
            SolverChoice::default(),
            Seed::new(1, 0),
            &params,
        )
        .unwrap();
        assert_eq!(p.active_count(), 0);
    }

    #[test]
    fn prediction_coefficient_examples() {
        let ln2 = std::f64::consts::LN_2;
        let p = centralized_predictions(0.5, ln2).unwrap();
        assert_relative_eq!(p.kappa, 0.5 / ln2, max_relative = 1e-12);
        // the inner factor reduces to 1/(1 - log 2) at alpha = 1/2, delta = log 2
        assert_relative_eq!(p.lambda, (1.0 / (1.0 - ln2)).ln(), max_relative = 1e-12);
        assert_abs_diff_eq!(p.lambda, 1.18139, epsilon = 1e-4);
        assert_relative_eq!(
            p.sum_rate_coefficient,
            p.kappa * p.lambda,
            max_relative = 1e-12
        );
        assert!(centralized_predictions(0.0, 1.0).is_err());
        assert!(centralized_predictions(0.5, 0.0).is_err());
        assert!(centralized_predictions(0.5, 800.0).is_err());
    }

    #[test]
    fn lambda_positive_across_parameter_grid() {
        for alpha in [0.05, 0.3, 0.5, 0.8, 0.95] {
            for delta in [0.01, 0.1, 1.0, 5.0, 20.0] {
                let p = centralized_predictions(alpha, delta).unwrap();
                assert!(p.lambda > 0.0, "lambda {} at ({alpha}, {delta})", p.lambda);
            }
        }
    }

    #[test]
    fn kappa_and_lambda_monotone_in_delta() {
        for alpha in [0.2, 0.5, 0.8] {
            let mut prev: Option<CentralizedPrediction> = None;
            for delta in log_spaced(1e-3, 20.0, 60) {
                let p = centralized_predictions(alpha, delta).unwrap();
                if let Some(prev) = prev {
                    assert!(p.kappa > prev.kappa, "kappa must grow with delta");
                    assert!(p.lambda < prev.lambda, "lambda must shrink with delta");
                }
                prev = Some(p);
            }
        }
    }

    #[test]
    fn optimize_delta_against_dense_scan() {
        let opt = optimize_delta(0.5, &DeltaGrid::default()).unwrap();
        // independent dense linear scan oracle
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 1..100_000 {
            let delta = 2.0 * i as f64 / 100_000.0;
            let c = centralized_predictions(0.5, delta)
                .unwrap()
                .sum_rate_coefficient;
            if c > best.1 {
                best = (delta, c);
            }
        }
        assert_abs_diff_eq!(opt.argument, best.0, epsilon = 1e-3);
        assert!(opt.value >= best.1 - 1e-9);
        assert!(opt.value.is_finite() && opt.value > 0.0);
    }

    #[test]
    fn tradeoff_frontier_shape() {
        let points = tradeoff_centralized(&default_alpha_grid()).unwrap();
        assert!(points.len() >= 60, "optimizer failed on too many alphas");
        for pair in points.windows(2) {
            assert!(pair[0].kappa < pair[1].kappa);
            assert!(
                pair[0].lambda >= pair[1].lambda,
                "lambda must fall as kappa grows"
            );
        }
        for p in &points {
            assert!(p.kappa > 0.0 && p.kappa.is_finite());
            assert!(p.lambda > 0.0 && p.lambda.is_finite());
        }
    }

    #[test]
    fn random_graph_edge_density() {
        let g = seeded_graph(200, 0.3, 9);
        let pairs = 200.0 * 199.0 / 2.0;
        let freq = g.edge_count() as f64 / pairs;
        let sd = (0.3 * 0.7 / pairs).sqrt();
        assert!((freq - 0.3).abs() < 4.0 * sd, "density {freq} off from 0.3");
        assert!(g.is_symmetric_with_zero_diagonal());
    }
}
