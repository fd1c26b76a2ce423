//! Mutual-information graphs and the emergent distances read off them.
//!
//! Vertices are single factors. Each edge carries the pairwise mutual
//! information `I(p:q)`; an edge is re-weighted into a length
//! `l_rc * phi(I / I0)` with `I0` the largest edge, and the distance between
//! two vertices is the shortest path over those lengths.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use petgraph::graph::{NodeIndex, UnGraph};
use rayon::prelude::*;

use crate::hilbert::PureState;
use crate::infotheory::{subsystem_entropy, DERIVED_TOL};
use crate::{Error, Result};

/// Pairwise mutual informations below this are treated as absent edges.
pub const EDGE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct InfoGraph {
    vertices: Vec<String>,
    // Keyed by vertex index pairs with `p < q`.
    edges: BTreeMap<(usize, usize), f64>,
    i0: f64,
}

impl InfoGraph {
    /// Build from explicit `(p, q, I)` triples. Edges below
    /// [`EDGE_THRESHOLD`] are dropped.
    pub fn from_edges<'a, I>(vertices: &[impl AsRef<str>], edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, f64)>,
    {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (k, v) in vertices.iter().enumerate() {
            if vertices[..k].contains(v) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let index = |l: &str| {
            vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::UnknownVertex(l.to_string()))
        };
        let mut map = BTreeMap::new();
        for (p, q, mi) in edges {
            let (a, b) = (index(p)?, index(q)?);
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop on `{p}`")));
            }
            if !(mi >= -DERIVED_TOL) || !mi.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "mutual information {mi} on ({p},{q}) is not a nonnegative number"
                )));
            }
            if mi >= EDGE_THRESHOLD {
                map.insert((a.min(b), a.max(b)), mi);
            }
        }
        let i0 = map.values().copied().fold(0.0f64, f64::max);
        if map.is_empty() {
            return Err(Error::NoCorrelations);
        }
        Ok(Self {
            vertices,
            edges: map,
            i0,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Largest pairwise mutual information.
    pub fn i0(&self) -> f64 {
        self.i0
    }

    fn index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Mutual information on `(p, q)`, `None` when the edge is absent.
    pub fn mutual_info(&self, p: &str, q: &str) -> Result<Option<f64>> {
        let (a, b) = (self.index(p)?, self.index(q)?);
        Ok(self.edges.get(&(a.min(b), a.max(b))).copied())
    }

    /// Edges as `(src, dst, I)` with `src < dst` by label, sorted.
    pub fn edges(&self) -> Vec<(&str, &str, f64)> {
        let mut out: Vec<(&str, &str, f64)> = self
            .edges
            .iter()
            .map(|(&(a, b), &mi)| {
                let (x, y) = (self.vertices[a].as_str(), self.vertices[b].as_str());
                if x <= y {
                    (x, y, mi)
                } else {
                    (y, x, mi)
                }
            })
            .collect();
        out.sort_by(|l, r| (l.0, l.1).cmp(&(r.0, r.1)));
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Mutual-information graph over the single factors of `psi`.
pub fn build_info_graph(psi: &PureState) -> Result<InfoGraph> {
    let labels: Vec<&str> = psi.tps().labels();
    let n = labels.len();
    if n < 2 {
        return Err(Error::TooFewFactors(
            "a mutual-information graph needs at least two factors".into(),
        ));
    }
    let singles: Vec<f64> = labels
        .par_iter()
        .map(|l| subsystem_entropy(psi, &[*l]).map(|s| s.nats()))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .collect();
    let mis: Vec<f64> = pairs
        .par_iter()
        .map(|&(p, q)| {
            let joint = subsystem_entropy(psi, &[labels[p], labels[q]])?.nats();
            Ok((singles[p] + singles[q] - joint).max(0.0))
        })
        .collect::<Result<_>>()?;
    InfoGraph::from_edges(
        &labels,
        pairs
            .iter()
            .zip(mis)
            .map(|(&(p, q), mi)| (labels[p], labels[q], mi)),
    )
}

/// Monotonically decreasing `phi` on `(0, 1]` with `phi(1) = 0` and a pole
/// at zero, scaled by the length `l_rc`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFunction {
    /// `phi(x) = -log x`.
    NegLog { l_rc: f64 },
    /// Piecewise-linear through `(x, phi)` points, ascending in `x`, ending
    /// at `(1, 0)`. Below the first point it continues as
    /// `phi(x0) + log(x0 / x)`.
    Table { l_rc: f64, points: Vec<(f64, f64)> },
}

impl Default for WeightFunction {
    fn default() -> Self {
        WeightFunction::NegLog { l_rc: 1.0 }
    }
}

impl WeightFunction {
    pub fn neg_log(l_rc: f64) -> Result<Self> {
        check_scale(l_rc)?;
        Ok(WeightFunction::NegLog { l_rc })
    }

    pub fn table(l_rc: f64, points: Vec<(f64, f64)>) -> Result<Self> {
        check_scale(l_rc)?;
        let bad = |msg: &str| Err(Error::InvalidWeightFunction(msg.to_string()));
        let Some(&(last_x, last_phi)) = points.last() else {
            return bad("table is empty");
        };
        if last_x != 1.0 || last_phi != 0.0 {
            return bad("table must end at (1, 0)");
        }
        if points.iter().any(|&(x, y)| !(x > 0.0 && x <= 1.0) || !y.is_finite()) {
            return bad("table points need x in (0, 1] and finite values");
        }
        for w in points.windows(2) {
            if !(w[0].0 < w[1].0) {
                return bad("table x values must be strictly ascending");
            }
            if !(w[0].1 > w[1].1) {
                return bad("table values must be strictly decreasing");
            }
        }
        Ok(WeightFunction::Table { l_rc, points })
    }

    pub fn l_rc(&self) -> f64 {
        match self {
            WeightFunction::NegLog { l_rc } | WeightFunction::Table { l_rc, .. } => *l_rc,
        }
    }

    /// Unscaled `phi(x)` for `x` in `[0, 1]`.
    pub fn phi(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::INFINITY;
        }
        match self {
            // `+ 0.0` turns -0 at x = 1 into +0.
            WeightFunction::NegLog { .. } => -x.ln() + 0.0,
            WeightFunction::Table { points, .. } => {
                let (x0, y0) = points[0];
                if x <= x0 {
                    return y0 + (x0 / x).ln();
                }
                let k = points.partition_point(|&(px, _)| px < x);
                let (xa, ya) = points[k - 1];
                let (xb, yb) = points[k.min(points.len() - 1)];
                if xb == xa {
                    return yb;
                }
                ya + (yb - ya) * (x - xa) / (xb - xa)
            }
        }
    }
}

fn check_scale(l_rc: f64) -> Result<()> {
    if !(l_rc > 0.0 && l_rc.is_finite()) {
        return Err(Error::InvalidWeightFunction(format!(
            "l_rc must be positive and finite, got {l_rc}"
        )));
    }
    Ok(())
}

/// `l_rc * phi(i / i0)`; `+inf` when `i = 0`.
pub fn edge_weight(i: f64, i0: f64, phi: &WeightFunction) -> Result<f64> {
    if !(i0 > 0.0) || !(i >= 0.0) || i > i0 || !i0.is_finite() {
        return Err(Error::WeightDomain { i, i0 });
    }
    let w = phi.phi(i / i0);
    if w.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(phi.l_rc() * w)
}

/// Pairwise distances; `+inf` between disconnected vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct EmergentMetric {
    vertices: Vec<String>,
    table: Vec<Vec<f64>>,
}

impl EmergentMetric {
    /// Wrap an arbitrary distance table (no axioms enforced).
    pub fn from_table(vertices: &[impl AsRef<str>], table: Vec<Vec<f64>>) -> Result<Self> {
        let n = vertices.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: table.len(),
            });
        }
        Ok(Self {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            table,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    pub fn distance(&self, p: &str, q: &str) -> Result<f64> {
        let idx = |l: &str| {
            self.vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::UnknownVertex(l.to_string()))
        };
        Ok(self.table[idx(p)?][idx(q)?])
    }
}

struct WeightedGraph {
    graph: UnGraph<(), f64>,
    nodes: Vec<NodeIndex>,
}

impl WeightedGraph {
    fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut graph = UnGraph::with_capacity(n, 0);
        let nodes: Vec<NodeIndex> = (0..n).map(|_| graph.add_node(())).collect();
        for (a, b, w) in edges {
            if w.is_finite() {
                graph.add_edge(nodes[a], nodes[b], w);
            }
        }
        Self { graph, nodes }
    }

    fn from_info(graph: &InfoGraph, phi: &WeightFunction) -> Result<Self> {
        let weights = graph
            .edges
            .iter()
            .map(|(&(a, b), &mi)| Ok((a, b, edge_weight(mi, graph.i0, phi)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(graph.vertices.len(), weights))
    }

    fn distances_from(&self, source: usize) -> Vec<f64> {
        let reached =
            petgraph::algo::dijkstra(&self.graph, self.nodes[source], None, |e| *e.weight());
        self.nodes
            .iter()
            .map(|n| reached.get(n).copied().unwrap_or(f64::INFINITY))
            .collect()
    }

    /// All-pairs table, each unordered pair taken from the lower-index
    /// source so that the result is exactly symmetric.
    #[allow(clippy::needless_range_loop)]
    fn metric(&self) -> Vec<Vec<f64>> {
        let n = self.nodes.len();
        let mut table = vec![vec![0.0; n]; n];
        for p in 0..n {
            let row = self.distances_from(p);
            for q in p + 1..n {
                table[p][q] = row[q];
                table[q][p] = row[q];
            }
        }
        table
    }
}

/// Shortest-path distance between `p` and `q`.
pub fn emergent_distance(graph: &InfoGraph, phi: &WeightFunction, p: &str, q: &str) -> Result<f64> {
    let (a, b) = (graph.index(p)?, graph.index(q)?);
    if a == b {
        return Ok(0.0);
    }
    let g = WeightedGraph::from_info(graph, phi)?;
    Ok(g.distances_from(a.min(b))[a.max(b)])
}

/// All pairwise emergent distances.
pub fn emergent_metric(graph: &InfoGraph, phi: &WeightFunction) -> Result<EmergentMetric> {
    let g = WeightedGraph::from_info(graph, phi)?;
    Ok(EmergentMetric {
        vertices: graph.vertices.clone(),
        table: g.metric(),
    })
}

/// Shortest-path metric over explicit edge lengths `(p, q, w)`.
pub fn shortest_path_metric<'a, I>(vertices: &[impl AsRef<str>], lengths: I) -> Result<EmergentMetric>
where
    I: IntoIterator<Item = (&'a str, &'a str, f64)>,
{
    let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
    let index = |l: &str| {
        names
            .iter()
            .position(|v| v == l)
            .ok_or_else(|| Error::UnknownVertex(l.to_string()))
    };
    let edges = lengths
        .into_iter()
        .map(|(p, q, w)| {
            if !(w >= 0.0) {
                return Err(Error::InvalidArgument(format!("negative length {w} on ({p},{q})")));
            }
            Ok((index(p)?, index(q)?, w))
        })
        .collect::<Result<Vec<_>>>()?;
    let g = WeightedGraph::new(names.len(), edges);
    Ok(EmergentMetric {
        table: g.metric(),
        vertices: names,
    })
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricReport {
    pub asymmetric: Vec<(String, String)>,
    pub negative: Vec<(String, String)>,
    pub nonzero_self: Vec<String>,
    /// `(p, q, r, excess)` with `d(p,r) > d(p,q) + d(q,r) + tol`.
    pub triangle: Vec<(String, String, String, f64)>,
    /// Distinct vertices at distance zero; allowed in a pseudo-metric.
    pub zero_distance_pairs: Vec<(String, String)>,
    pub triples_checked: usize,
}

impl MetricReport {
    pub fn passed(&self) -> bool {
        self.asymmetric.is_empty()
            && self.negative.is_empty()
            && self.nonzero_self.is_empty()
            && self.triangle.is_empty()
    }
}

/// Verify pseudo-metric axioms: exact symmetry, nonnegativity, `d(p,p) = 0`
/// and the triangle inequality within [`DERIVED_TOL`].
pub fn metric_check(metric: &EmergentMetric) -> MetricReport {
    let v = &metric.vertices;
    let d = &metric.table;
    let n = v.len();
    let mut report = MetricReport::default();
    for p in 0..n {
        if d[p][p] != 0.0 {
            report.nonzero_self.push(v[p].clone());
        }
        for q in 0..n {
            if d[p][q] < 0.0 || d[p][q].is_nan() {
                report.negative.push((v[p].clone(), v[q].clone()));
            }
            if q > p {
                if d[p][q] != d[q][p] {
                    report.asymmetric.push((v[p].clone(), v[q].clone()));
                }
                if d[p][q] == 0.0 {
                    report.zero_distance_pairs.push((v[p].clone(), v[q].clone()));
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let via = d[p][q] + d[q][r];
                if !via.is_finite() {
                    continue;
                }
                report.triples_checked += 1;
                let excess = d[p][r] - via;
                if excess > DERIVED_TOL {
                    report
                        .triangle
                        .push((v[p].clone(), v[q].clone(), v[r].clone(), excess));
                }
            }
        }
    }
    report
}

pub const EDGE_LIST_HEADER: &str = "src,dst,mutual_info_nats,weight";

/// Fixed nine-decimal rendering used by every text output; `-0` prints as
/// `0`, infinities as `inf`.
pub fn format_fixed(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        let s = format!("{:.9}", x);
        if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
            s[1..].to_string()
        } else {
            s
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub src: String,
    pub dst: String,
    pub mutual_info_nats: f64,
    pub weight: f64,
}

pub fn edge_records(graph: &InfoGraph, phi: &WeightFunction) -> Result<Vec<EdgeRecord>> {
    graph
        .edges()
        .into_iter()
        .map(|(src, dst, mi)| {
            Ok(EdgeRecord {
                src: src.to_string(),
                dst: dst.to_string(),
                mutual_info_nats: mi,
                weight: edge_weight(mi, graph.i0, phi)?,
            })
        })
        .collect()
}

/// Edge list as CSV text: header plus one LF-terminated row per edge.
pub fn format_edge_list(graph: &InfoGraph, phi: &WeightFunction) -> Result<String> {
    let mut out = String::new();
    out.push_str(EDGE_LIST_HEADER);
    out.push('\n');
    for r in edge_records(graph, phi)? {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.src,
            r.dst,
            format_fixed(r.mutual_info_nats),
            format_fixed(r.weight)
        );
    }
    Ok(out)
}

/// Parse an edge list produced by [`format_edge_list`].
pub fn parse_edge_list(text: &str) -> Result<Vec<EdgeRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end_matches('\r') == EDGE_LIST_HEADER => {}
        _ => {
            return Err(Error::InvalidArgument("missing edge-list header".into()));
        }
    }
    let num = |s: &str, line: usize| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| Error::InvalidArgument(format!("line {line}: bad number `{s}`")))
    };
    lines
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(k, line)| {
            let line = line.trim_end_matches('\r');
            let fields: Vec<&str> = line.split(',').collect();
            let [src, dst, mi, w] = fields[..] else {
                return Err(Error::InvalidArgument(format!(
                    "line {}: expected 4 fields, got {}",
                    k + 2,
                    fields.len()
                )));
            };
            if src.is_empty() || dst.is_empty() {
                return Err(Error::InvalidArgument(format!("line {}: empty label", k + 2)));
            }
            Ok(EdgeRecord {
                src: src.to_string(),
                dst: dst.to_string(),
                mutual_info_nats: num(mi, k + 2)?,
                weight: num(w, k + 2)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{tensor, TensorProductStructure};
    use crate::linalg::CVector;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::LN_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ghz3() -> PureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = CVector::zeros(8);
        amps[0] = c(h);
        amps[7] = c(h);
        PureState::new(TensorProductStructure::qubits(&["A", "B", "C"]).unwrap(), amps).unwrap()
    }

    fn bell() -> PureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(
            TensorProductStructure::qubits(&["A", "B"]).unwrap(),
            CVector::from_vec(vec![c(h), c(0.0), c(0.0), c(h)]),
        )
        .unwrap()
    }

    #[test]
    fn bell_plus_spectator_graph() {
        let up = PureState::basis(TensorProductStructure::qubits(&["C"]).unwrap(), &[0]).unwrap();
        let g = build_info_graph(&tensor(&[&bell(), &up]).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_abs_diff_eq!(g.mutual_info("A", "B").unwrap().unwrap(), 2.0 * LN_2, epsilon = 1e-12);
        assert_eq!(g.mutual_info("A", "C").unwrap(), None);
        let phi = WeightFunction::default();
        assert_eq!(emergent_distance(&g, &phi, "A", "B").unwrap(), 0.0);
        assert!(emergent_distance(&g, &phi, "A", "C").unwrap().is_infinite());
    }

    #[test]
    fn ghz_graph_has_three_equal_edges() {
        let g = build_info_graph(&ghz3()).unwrap();
        let edges = g.edges();
        assert_eq!(edges.len(), 3);
        for (_, _, mi) in edges {
            assert_abs_diff_eq!(mi, LN_2, epsilon = 1e-12);
        }
    }

    #[test]
    fn product_state_has_no_correlations() {
        let s = PureState::basis(TensorProductStructure::qubits(&["A", "B", "C"]).unwrap(), &[0, 0, 0])
            .unwrap();
        assert_eq!(build_info_graph(&s).unwrap_err(), Error::NoCorrelations);
    }

    #[test]
    fn edge_weight_examples() {
        let phi = WeightFunction::neg_log(1.0).unwrap();
        let w = edge_weight(2.0 * LN_2, 2.0 * LN_2, &phi).unwrap();
        assert_eq!(w, 0.0);
        assert!(w.is_sign_positive());
        assert_abs_diff_eq!(edge_weight(LN_2, 2.0 * LN_2, &phi).unwrap(), LN_2, epsilon = 1e-15);
        assert!(edge_weight(0.0, 1.0, &phi).unwrap().is_infinite());
        assert!(edge_weight(2.0, 1.0, &phi).is_err());
        assert!(edge_weight(0.5, 0.0, &phi).is_err());
        let scaled = WeightFunction::neg_log(3.0).unwrap();
        assert_abs_diff_eq!(edge_weight(LN_2, 2.0 * LN_2, &scaled).unwrap(), 3.0 * LN_2, epsilon = 1e-15);
    }

    #[test]
    fn table_weight_function() {
        let phi = WeightFunction::table(1.0, vec![(0.25, 2.0), (0.5, 1.0), (1.0, 0.0)]).unwrap();
        assert_eq!(phi.phi(1.0), 0.0);
        assert_abs_diff_eq!(phi.phi(0.75), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(phi.phi(0.125), 2.0 + 2f64.ln(), epsilon = 1e-15);
        assert!(phi.phi(0.0).is_infinite());
        assert!(WeightFunction::table(1.0, vec![(0.5, 1.0), (1.0, 0.5)]).is_err());
        assert!(WeightFunction::table(1.0, vec![(0.5, 0.0), (1.0, 0.0)]).is_err());
        assert!(WeightFunction::neg_log(0.0).is_err());
    }

    #[test]
    fn shortest_path_beats_direct_edge() {
        let m = shortest_path_metric(
            &["p", "m", "q"],
            [("p", "q", 5.0), ("p", "m", 1.0), ("m", "q", 2.0)],
        )
        .unwrap();
        assert_eq!(m.distance("p", "q").unwrap(), 3.0);
        assert!(metric_check(&m).passed());
    }

    #[test]
    fn disconnected_components_are_infinite() {
        let m = shortest_path_metric(&["a", "b", "c", "d"], [("a", "b", 1.0), ("c", "d", 1.0)]).unwrap();
        assert!(m.distance("a", "c").unwrap().is_infinite());
        assert!(metric_check(&m).passed());
    }

    #[test]
    fn asymmetric_table_flagged() {
        let m = EmergentMetric::from_table(&["a", "b"], vec![vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        let r = metric_check(&m);
        assert!(!r.passed());
        assert_eq!(r.asymmetric, vec![("a".to_string(), "b".to_string())]);
    }

    #[test]
    fn triangle_violation_flagged() {
        let m = EmergentMetric::from_table(
            &["a", "b", "c"],
            vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]],
        )
        .unwrap();
        assert!(!metric_check(&m).triangle.is_empty());
    }

    #[test]
    fn unknown_vertex() {
        let g = build_info_graph(&ghz3()).unwrap();
        assert_eq!(
            emergent_distance(&g, &WeightFunction::default(), "A", "Z").unwrap_err(),
            Error::UnknownVertex("Z".into())
        );
    }

    #[test]
    fn bell_edge_list_row() {
        let g = build_info_graph(&bell()).unwrap();
        let text = format_edge_list(&g, &WeightFunction::default()).unwrap();
        assert_eq!(text, "src,dst,mutual_info_nats,weight\nA,B,1.386294361,0.000000000\n");
        let parsed = parse_edge_list(&text).unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed[0].src, "A");
    }

    #[test]
    fn fixed_format() {
        assert_eq!(format_fixed(-0.0), "0.000000000");
        assert_eq!(format_fixed(-1e-12), "0.000000000");
        assert_eq!(format_fixed(f64::INFINITY), "inf");
        assert_eq!(format_fixed(LN_2), "0.693147181");
    }

    #[test]
    fn edge_list_parse_errors() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("src,dst,mutual_info_nats,weight\nA,B,1\n").is_err());
        assert!(parse_edge_list("src,dst,mutual_info_nats,weight\nA,B,x,0\n").is_err());
    }
}
