//! Directed hyperlink networks.
//!
//! A [`DirectedGraph`] is immutable once built. Adjacency is kept in a
//! compressed sparse layout grouped by *target*: for every node `i` the
//! sources of its incoming links form one contiguous, sorted slice. This is
//! the access pattern of a power-iteration sweep, where each node gathers
//! mass from its predecessors. The grouping by source is obtained by calling
//! [`DirectedGraph::reverse`].
//!
//! Multi-links collapse to a single edge: adjacency is binary.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use thiserror::Error;

/// Dense node index in `[0, N)`.
pub type NodeId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: expected 2 tokens, found {found}")]
    Malformed { line: usize, found: usize },
    #[error("line {line}: invalid node id {token:?}")]
    BadId { line: usize, token: String },
    #[error("line {line}: invalid header: {text:?}")]
    BadHeader { line: usize, text: String },
    #[error("node id {id} out of range for {node_count} nodes")]
    OutOfRange { id: u64, node_count: usize },
    #[error("graph has {0} nodes, more than the supported maximum")]
    TooLarge(u64),
    #[error("label count {labels} does not match node count {nodes}")]
    LabelCount { labels: usize, nodes: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// How node tokens in an edge list are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelMode {
    /// Tokens are non-negative integer ids.
    #[default]
    IntegerIds,
    /// Tokens are article titles, interned to dense ids in first-appearance order.
    StringLabels,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub drop_self_loops: bool,
    pub label_mode: LabelMode,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            drop_self_loops: true,
            label_mode: LabelMode::IntegerIds,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    /// Nodes with no outgoing link.
    pub dangling_count: usize,
    /// Self-loops removed while building the graph.
    pub self_loop_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGraph {
    node_count: usize,
    /// `in_offsets[i]..in_offsets[i + 1]` indexes the sources of links into `i`.
    in_offsets: Vec<usize>,
    in_sources: Vec<NodeId>,
    out_degree: Vec<u32>,
    labels: Option<Vec<String>>,
    self_loops_removed: usize,
}

impl DirectedGraph {
    /// Builds a graph from an arbitrary edge list. Duplicate pairs collapse,
    /// self-loops are dropped when `drop_self_loops` is set.
    pub fn from_edges(
        node_count: usize,
        mut edges: Vec<(NodeId, NodeId)>,
        drop_self_loops: bool,
    ) -> Result<Self, GraphError> {
        if node_count as u64 > NodeId::MAX as u64 + 1 {
            return Err(GraphError::TooLarge(node_count as u64));
        }
        if let Some(&(s, t)) = edges
            .iter()
            .find(|&&(s, t)| s as usize >= node_count || t as usize >= node_count)
        {
            return Err(GraphError::OutOfRange {
                id: s.max(t) as u64,
                node_count,
            });
        }

        let before = edges.len();
        if drop_self_loops {
            edges.retain(|&(s, t)| s != t);
        }
        let self_loops_removed = before - edges.len();

        edges.sort_unstable_by_key(|&(s, t)| ((t as u64) << 32) | s as u64);
        edges.dedup();

        let mut in_offsets = vec![0usize; node_count + 1];
        let mut out_degree = vec![0u32; node_count];
        for &(s, t) in &edges {
            in_offsets[t as usize + 1] += 1;
            out_degree[s as usize] += 1;
        }
        for i in 0..node_count {
            in_offsets[i + 1] += in_offsets[i];
        }
        let in_sources: Vec<NodeId> = edges.iter().map(|&(s, _)| s).collect();
        drop(edges);

        Ok(DirectedGraph {
            node_count,
            in_offsets,
            in_sources,
            out_degree,
            labels: None,
            self_loops_removed,
        })
    }

    /// Attaches one label per node.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.node_count {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                nodes: self.node_count,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.in_sources.len()
    }

    /// Sorted sources of the links pointing at `node`.
    #[inline]
    pub fn predecessors(&self, node: NodeId) -> &[NodeId] {
        let i = node as usize;
        &self.in_sources[self.in_offsets[i]..self.in_offsets[i + 1]]
    }

    #[inline]
    pub fn out_degree(&self, node: NodeId) -> u32 {
        self.out_degree[node as usize]
    }

    #[inline]
    pub fn in_degree(&self, node: NodeId) -> u32 {
        let i = node as usize;
        (self.in_offsets[i + 1] - self.in_offsets[i]) as u32
    }

    pub fn out_degrees(&self) -> &[u32] {
        &self.out_degree
    }

    pub fn in_degrees(&self) -> Vec<u32> {
        self.in_offsets.windows(2).map(|w| (w[1] - w[0]) as u32).collect()
    }

    pub fn is_dangling(&self, node: NodeId) -> bool {
        self.out_degree[node as usize] == 0
    }

    /// Out-neighbors of `node`, found by probing every target's sorted
    /// predecessor slice. O(N log d); meant for inspection, not for sweeps.
    pub fn successors(&self, node: NodeId) -> Vec<NodeId> {
        if self.is_dangling(node) {
            return Vec::new();
        }
        (0..self.node_count as NodeId)
            .filter(|&t| self.predecessors(t).binary_search(&node).is_ok())
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, node: NodeId) -> Option<&str> {
        self.labels.as_ref().map(|l| l[node as usize].as_str())
    }

    pub fn self_loops_removed(&self) -> usize {
        self.self_loops_removed
    }

    /// All edges as `(source, target)`, grouped by target and sorted.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count as NodeId)
            .flat_map(move |t| self.predecessors(t).iter().map(move |&s| (s, t)))
    }

    /// The graph with every link flipped. Labels are carried over.
    pub fn reverse(&self) -> DirectedGraph {
        let n = self.node_count;
        let mut offsets = vec![0usize; n + 1];
        for (i, &d) in self.out_degree.iter().enumerate() {
            offsets[i + 1] = offsets[i] + d as usize;
        }
        let mut cursor = offsets.clone();
        let mut sources = vec![0 as NodeId; self.in_sources.len()];
        // Targets are visited in increasing order, so every new slice comes out sorted.
        for t in 0..n as NodeId {
            for &s in self.predecessors(t) {
                let slot = &mut cursor[s as usize];
                sources[*slot] = t;
                *slot += 1;
            }
        }
        DirectedGraph {
            node_count: n,
            in_offsets: offsets,
            in_sources: sources,
            out_degree: self.in_degrees(),
            labels: self.labels.clone(),
            self_loops_removed: self.self_loops_removed,
        }
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            node_count: self.node_count,
            edge_count: self.edge_count(),
            dangling_count: self.out_degree.iter().filter(|&&d| d == 0).count(),
            self_loop_count: self.self_loops_removed,
        }
    }

    /// Heap bytes held by the adjacency and degree arrays (labels excluded).
    pub fn heap_bytes(&self) -> usize {
        self.in_offsets.capacity() * std::mem::size_of::<usize>()
            + self.in_sources.capacity() * std::mem::size_of::<NodeId>()
            + self.out_degree.capacity() * std::mem::size_of::<u32>()
    }
}

/// Free-function form of [`DirectedGraph::reverse`].
pub fn reverse(g: &DirectedGraph) -> DirectedGraph {
    g.reverse()
}

/// Free-function form of [`DirectedGraph::stats`].
pub fn stats(g: &DirectedGraph) -> GraphStats {
    g.stats()
}

const HEADER_PREFIX: &str = "nodes:";

fn parse_header(comment: &str, line: usize) -> Result<Option<usize>, GraphError> {
    let body = comment.trim_start_matches('#').trim();
    match body.strip_prefix(HEADER_PREFIX) {
        Some(rest) => rest
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| GraphError::BadHeader {
                line,
                text: comment.to_string(),
            }),
        None => Ok(None),
    }
}

/// Splits an edge line into its two endpoints. A line containing a tab is
/// split on tabs only, so titles may contain spaces.
fn split_pair(line: &str) -> Option<(&str, &str)> {
    let (a, b) = if line.contains('\t') {
        let mut it = line.split('\t');
        let pair = (it.next()?.trim(), it.next()?.trim());
        if it.next().is_some() {
            return None;
        }
        pair
    } else {
        let mut it = line.split_whitespace();
        let pair = (it.next()?, it.next()?);
        if it.next().is_some() {
            return None;
        }
        pair
    };
    (!a.is_empty() && !b.is_empty()).then_some((a, b))
}

/// Reads a whitespace-separated edge list (tab-separated when a line
/// holds a tab). Lines starting with `#` are
/// comments; `# nodes: N` declares the node count.
pub fn load_edge_list<R: BufRead>(
    reader: R,
    options: LoadOptions,
) -> Result<DirectedGraph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut interned: HashMap<String, NodeId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut max_id: Option<u64> = None;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if let Some(n) = parse_header(trimmed, line_no)? {
                declared = Some(n);
            }
            continue;
        }
        let (a, b) = split_pair(trimmed).ok_or_else(|| GraphError::Malformed {
            line: line_no,
            found: if trimmed.contains('\t') {
                trimmed.split('\t').count()
            } else {
                trimmed.split_whitespace().count()
            },
        })?;
        let edge = match options.label_mode {
            LabelMode::IntegerIds => {
                let parse = |tok: &str| -> Result<u64, GraphError> {
                    let id = tok.parse::<u64>().map_err(|_| GraphError::BadId {
                        line: line_no,
                        token: tok.to_string(),
                    })?;
                    if let Some(n) = declared {
                        if id >= n as u64 {
                            return Err(GraphError::OutOfRange { id, node_count: n });
                        }
                    }
                    if id > NodeId::MAX as u64 {
                        return Err(GraphError::TooLarge(id + 1));
                    }
                    Ok(id)
                };
                let (s, t) = (parse(a)?, parse(b)?);
                max_id = Some(max_id.unwrap_or(0).max(s).max(t));
                (s as NodeId, t as NodeId)
            }
            LabelMode::StringLabels => {
                let mut intern = |tok: &str| -> Result<NodeId, GraphError> {
                    if let Some(&id) = interned.get(tok) {
                        return Ok(id);
                    }
                    let id = labels.len() as u64;
                    if let Some(n) = declared {
                        if id >= n as u64 {
                            return Err(GraphError::OutOfRange { id, node_count: n });
                        }
                    }
                    if id > NodeId::MAX as u64 {
                        return Err(GraphError::TooLarge(id + 1));
                    }
                    interned.insert(tok.to_string(), id as NodeId);
                    labels.push(tok.to_string());
                    Ok(id as NodeId)
                };
                (intern(a)?, intern(b)?)
            }
        };
        edges.push(edge);
    }

    let node_count = match options.label_mode {
        LabelMode::IntegerIds => declared.unwrap_or(max_id.map_or(0, |m| m as usize + 1)),
        LabelMode::StringLabels => declared.unwrap_or(labels.len()),
    };
    let graph = DirectedGraph::from_edges(node_count, edges, options.drop_self_loops)?;
    match options.label_mode {
        LabelMode::IntegerIds => Ok(graph),
        LabelMode::StringLabels => {
            // Declared nodes that never appear on an edge get their id as label.
            let first_missing = labels.len();
            labels.extend((first_missing..node_count).map(|i| i.to_string()));
            graph.with_labels(labels)
        }
    }
}

/// Writes the graph as an integer edge list with a `# nodes: N` header.
/// Labels are not part of this format; see [`write_labels`].
pub fn write_edge_list<W: Write>(g: &DirectedGraph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# {} {}", HEADER_PREFIX, g.node_count())?;
    for (s, t) in g.edges() {
        writeln!(out, "{s} {t}")?;
    }
    Ok(())
}

/// One `id<TAB>label` line per node.
pub fn write_labels<W: Write>(labels: &[String], mut out: W) -> std::io::Result<()> {
    for (i, l) in labels.iter().enumerate() {
        writeln!(out, "{i}\t{l}")?;
    }
    Ok(())
}

/// Reads an `id<TAB>label` file covering ids `0..node_count`.
pub fn load_labels<R: BufRead>(reader: R, node_count: usize) -> Result<Vec<String>, GraphError> {
    let mut labels: Vec<Option<String>> = vec![None; node_count];
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, label) = line.split_once('\t').ok_or(GraphError::Malformed {
            line: idx + 1,
            found: 1,
        })?;
        let id: u64 = id.trim().parse().map_err(|_| GraphError::BadId {
            line: idx + 1,
            token: id.to_string(),
        })?;
        if id as usize >= node_count {
            return Err(GraphError::OutOfRange { id, node_count });
        }
        labels[id as usize] = Some(label.to_string());
    }
    let found = labels.iter().filter(|l| l.is_some()).count();
    if found != node_count {
        return Err(GraphError::LabelCount {
            labels: found,
            nodes: node_count,
        });
    }
    Ok(labels.into_iter().map(Option::unwrap).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn load(text: &str, options: LoadOptions) -> Result<DirectedGraph, GraphError> {
        load_edge_list(text.as_bytes(), options)
    }

    fn edge_set(g: &DirectedGraph) -> BTreeSet<(NodeId, NodeId)> {
        g.edges().collect()
    }

    #[test]
    fn duplicates_collapse() {
        let g = load("0 1\n0 1\n1 0\n", LoadOptions::default()).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(edge_set(&g), BTreeSet::from([(0, 1), (1, 0)]));
    }

    #[test]
    fn self_loops_dropped_by_default() {
        let g = load("0 0\n", LoadOptions::default()).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.stats().self_loop_count, 1);

        let kept = load(
            "0 0\n",
            LoadOptions {
                drop_self_loops: false,
                ..LoadOptions::default()
            },
        )
        .unwrap();
        assert_eq!(kept.edge_count(), 1);
        assert_eq!(kept.stats().self_loop_count, 0);
    }

    #[test]
    fn string_labels_interned_in_order() {
        let opts = LoadOptions {
            label_mode: LabelMode::StringLabels,
            ..LoadOptions::default()
        };
        let g = load("a b\nb c\n", opts).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.labels().unwrap(), ["a", "b", "c"]);
        assert_eq!(edge_set(&g), BTreeSet::from([(0, 1), (1, 2)]));
    }

    #[test]
    fn tab_separated_titles_keep_spaces() {
        let text = "Isaac Newton\tGottfried Wilhelm Leibniz\nParis\tIsaac Newton\n";
        let opts = LoadOptions {
            label_mode: LabelMode::StringLabels,
            ..Default::default()
        };
        let g = load_edge_list(text.as_bytes(), opts).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.label(0), Some("Isaac Newton"));
        assert_eq!(g.predecessors(0), &[2]);
        assert!(load_edge_list("a\tb\tc\n".as_bytes(), opts).is_err());
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load("# c\n0 1\n0 1 2\n", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, GraphError::Malformed { line: 3, found: 3 }), "{err}");
        let err = load("0\n", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, GraphError::Malformed { line: 1, found: 1 }));
    }

    #[test]
    fn header_bounds_ids() {
        let g = load("# nodes: 5\n0 1\n", LoadOptions::default()).unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.stats().dangling_count, 4);
        let err = load("# nodes: 2\n0 2\n", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, GraphError::OutOfRange { id: 2, node_count: 2 }));
    }

    #[test]
    fn bad_token_rejected() {
        let err = load("0 x\n", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, GraphError::BadId { line: 1, .. }));
    }

    #[test]
    fn reverse_single_edge() {
        let g = DirectedGraph::from_edges(2, vec![(0, 1)], true).unwrap();
        assert_eq!(edge_set(&g.reverse()), BTreeSet::from([(1, 0)]));
    }

    #[test]
    fn reverse_symmetric_is_identity() {
        let g = DirectedGraph::from_edges(3, vec![(0, 1), (1, 0), (1, 2), (2, 1)], true).unwrap();
        assert_eq!(g.reverse(), g);
    }

    #[test]
    fn stats_examples() {
        let empty = DirectedGraph::from_edges(3, vec![], true).unwrap();
        assert_eq!(empty.stats().dangling_count, 3);

        let cycle = DirectedGraph::from_edges(3, vec![(0, 1), (1, 2), (2, 0)], true).unwrap();
        let s = cycle.stats();
        assert_eq!((s.dangling_count, s.edge_count), (0, 3));

        let star = DirectedGraph::from_edges(4, vec![(0, 1), (0, 2), (0, 3)], true).unwrap();
        assert_eq!(star.stats().dangling_count, 3);
    }

    #[test]
    fn successors_match_edges() {
        let g = DirectedGraph::from_edges(4, vec![(0, 3), (0, 1), (2, 0)], true).unwrap();
        assert_eq!(g.successors(0), vec![1, 3]);
        assert!(g.successors(1).is_empty());
    }

    #[test]
    fn labels_roundtrip() {
        let labels = vec!["Napoleon".to_string(), "Paris".to_string()];
        let mut buf = Vec::new();
        write_labels(&labels, &mut buf).unwrap();
        assert_eq!(load_labels(buf.as_slice(), 2).unwrap(), labels);
        assert!(load_labels(buf.as_slice(), 3).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = DirectedGraph> {
        (1usize..50).prop_flat_map(|n| {
            prop::collection::vec((0..n as NodeId, 0..n as NodeId), 0..200)
                .prop_map(move |e| DirectedGraph::from_edges(n, e, true).unwrap())
        })
    }

    proptest! {
        #[test]
        fn degrees_consistent_with_edges(g in arb_graph()) {
            let mut out = vec![0u32; g.node_count()];
            let mut inn = vec![0u32; g.node_count()];
            for (s, t) in g.edges() {
                out[s as usize] += 1;
                inn[t as usize] += 1;
            }
            prop_assert_eq!(&out[..], g.out_degrees());
            prop_assert_eq!(inn, g.in_degrees());
            let total: u64 = g.out_degrees().iter().map(|&d| d as u64).sum();
            prop_assert_eq!(total as usize, g.edge_count());
        }

        #[test]
        fn reverse_is_an_involution(g in arb_graph()) {
            let r = g.reverse();
            prop_assert_eq!(r.node_count(), g.node_count());
            prop_assert_eq!(r.edge_count(), g.edge_count());
            let flipped: BTreeSet<_> = g.edges().map(|(s, t)| (t, s)).collect();
            prop_assert_eq!(edge_set(&r), flipped);
            prop_assert_eq!(r.reverse(), g);
        }

        #[test]
        fn serialized_edge_list_reloads_identically(g in arb_graph()) {
            let mut buf = Vec::new();
            write_edge_list(&g, &mut buf).unwrap();
            let back = load_edge_list(buf.as_slice(), LoadOptions::default()).unwrap();
            prop_assert_eq!(back.node_count(), g.node_count());
            prop_assert_eq!(edge_set(&back), edge_set(&g));
            let mut again = Vec::new();
            write_edge_list(&back, &mut again).unwrap();
            prop_assert_eq!(buf, again);
        }
    }
}
