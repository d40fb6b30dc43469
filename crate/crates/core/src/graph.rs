//! Simple undirected graphs stored as dense row bitsets.
//!
//! Vertices are `0..n`. Row `u` of the adjacency bitset has bit `v` set iff
//! `{u, v}` is an edge; rows are symmetric and the diagonal is clear. For a
//! 1-based matrix presentation, row/column `i` is vertex `i - 1`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::{words_for, Bitset};
use crate::spectra::SymMatrix;
use crate::{Error, Result};

/// Largest cube dimension accepted by [`hamming_graph`].
pub const MAX_CUBE_DIM: usize = 16;

/// Default vertex cap for products and powers. Dense bitset rows make the
/// adjacency quadratic in the vertex count; 2^16 vertices is 512 MiB.
pub const DEFAULT_SIZE_CAP: usize = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Self {
            n,
            stride,
            rows: vec![0; n * stride],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// The cycle `C_n`; `n` must be at least 3.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "cycle needs n >= 3, got {n}"
            )));
        }
        let mut g = Self::empty(n);
        for u in 0..n {
            g.set_edge(u, (u + 1) % n);
        }
        Ok(g)
    }

    /// Petersen graph as the Kneser graph K(5,2): 2-subsets of {0..4},
    /// adjacent when disjoint. Vertices follow lexicographic subset order.
    pub fn petersen() -> Self {
        let mut subsets = Vec::with_capacity(10);
        for a in 0..5u32 {
            for b in a + 1..5 {
                subsets.push((1u32 << a) | (1 << b));
            }
        }
        let mut g = Self::empty(10);
        for (u, &su) in subsets.iter().enumerate() {
            for (v, &sv) in subsets.iter().enumerate().skip(u + 1) {
                if su & sv == 0 {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u * self.stride + v / 64] |= 1 << (v % 64);
        self.rows[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    fn clear_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.stride + u / 64] &= !(1 << (u % 64));
    }

    /// Copy of this graph with `{u, v}` removed (no-op if it is not an edge).
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        if u < self.n && v < self.n && u != v {
            g.clear_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.stride..(u + 1) * self.stride]
    }

    pub fn neighbors(&self, u: usize) -> Bitset {
        Bitset::from_words(self.n, self.row(u))
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(|&v| v > u)
                .map(|v| (u, v))
                .collect::<Vec<_>>()
        })
    }

    /// Checks the structural invariants: zero diagonal, symmetry, and no
    /// stray bits past column `n`.
    pub fn is_well_formed(&self) -> bool {
        let tail_ok = |u: usize| {
            let rem = self.n % 64;
            rem == 0 || self.row(u)[self.stride - 1] >> rem == 0
        };
        (0..self.n).all(|u| {
            !self.has_edge(u, u)
                && tail_ok(u)
                && self.neighbors(u).iter().all(|v| self.has_edge(v, u))
        })
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// 0/1 adjacency matrix; entry `(i, j)` is 1 iff `i ~ j`.
    pub fn adjacency_matrix(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }
}

/// Binary tuple label of a cube vertex; the leftmost coordinate is the most
/// significant bit, so `(1,0,0,1,0)` is 18.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VertexLabel {
    width: u32,
    value: u32,
}

impl VertexLabel {
    pub fn new(width: usize, value: u32) -> Result<Self> {
        if width == 0 || width > MAX_CUBE_DIM {
            return Err(Error::DimensionOutOfRange(width, MAX_CUBE_DIM));
        }
        if u64::from(value) >> width != 0 {
            return Err(Error::InvalidArgument(format!(
                "value {value} does not fit in {width} bits"
            )));
        }
        Ok(Self {
            width: width as u32,
            value,
        })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut value = 0u32;
        for &b in bits {
            if b > 1 {
                return Err(Error::InvalidArgument(format!(
                    "bit value {b} is not 0 or 1"
                )));
            }
            value = (value << 1) | u32::from(b);
        }
        Self::new(bits.len(), value)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn bits(self) -> Vec<u8> {
        (0..self.width)
            .rev()
            .map(|k| ((self.value >> k) & 1) as u8)
            .collect()
    }

    pub fn distance(self, other: Self) -> u32 {
        (self.value ^ other.value).count_ones()
    }
}

/// Graph on `{0,1}^m` where `u ~ v` iff the Hamming distance of `u` and `v`
/// lies in `distances`. An empty distance set gives the edgeless graph.
pub fn hamming_graph(m: usize, distances: &[usize]) -> Result<Graph> {
    if m == 0 || m > MAX_CUBE_DIM {
        return Err(Error::DimensionOutOfRange(m, MAX_CUBE_DIM));
    }
    let mut wanted = 0u32;
    for &d in distances {
        if d == 0 || d > m {
            return Err(Error::InvalidArgument(format!(
                "distance {d} outside 1..={m}"
            )));
        }
        wanted |= 1 << d;
    }
    let n = 1usize << m;
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if wanted >> (u ^ v).count_ones() & 1 == 1 {
                g.set_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Strong product with the default size cap. Vertex `(g, h)` has index
/// `g * |V(H)| + h`.
pub fn strong_product(g: &Graph, h: &Graph) -> Result<Graph> {
    strong_product_capped(g, h, DEFAULT_SIZE_CAP)
}

pub fn strong_product_capped(g: &Graph, h: &Graph, cap: usize) -> Result<Graph> {
    let requested = g.n as u128 * h.n as u128;
    if requested > cap as u128 {
        return Err(Error::SizeCap { requested, cap });
    }
    let nh = h.n;
    let mut out = Graph::empty(g.n * nh);
    // Closed neighbourhoods: (g,h) ~ (g',h') iff g' ∈ N[g], h' ∈ N[h], and
    // the pairs differ.
    let closed = |gr: &Graph, u: usize| {
        let mut s = gr.neighbors(u);
        s.insert(u);
        s
    };
    let h_closed: Vec<Vec<usize>> = (0..nh).map(|b| closed(h, b).iter().collect()).collect();
    for a in 0..g.n {
        let ga = closed(g, a);
        for b in 0..nh {
            let src = a * nh + b;
            for a2 in ga.iter() {
                for &b2 in &h_closed[b] {
                    let dst = a2 * nh + b2;
                    if dst != src {
                        out.rows[src * out.stride + dst / 64] |= 1 << (dst % 64);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `k`-fold strong power, folded left; `k = 1` returns a copy of `g`.
pub fn strong_power(g: &Graph, k: usize) -> Result<Graph> {
    strong_power_capped(g, k, DEFAULT_SIZE_CAP)
}

pub fn strong_power_capped(g: &Graph, k: usize, cap: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidArgument("strong power needs k >= 1".into()));
    }
    let requested = (g.n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if requested > cap as u128 {
        return Err(Error::SizeCap { requested, cap });
    }
    let mut acc = g.clone();
    for _ in 1..k {
        acc = strong_product_capped(&acc, g, cap)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube5_graph() -> Graph {
        hamming_graph(5, &[1, 2]).unwrap()
    }

    #[test]
    fn cube5_graph_is_15_regular() {
        let g = cube5_graph();
        assert_eq!(g.n(), 32);
        assert_eq!(g.regular_degree(), Some(15));
        assert_eq!(g.edge_count(), 240);
        assert!(g.is_well_formed());
    }

    #[test]
    fn empty_distance_set_is_edgeless() {
        let g = hamming_graph(5, &[]).unwrap();
        assert_eq!(g.n(), 32);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn three_cube_matches_brute_force() {
        let g = hamming_graph(3, &[1]).unwrap();
        let mut edges = 0;
        for u in 0..8usize {
            for v in u + 1..8 {
                let adjacent = (u ^ v).count_ones() == 1;
                assert_eq!(g.has_edge(u, v), adjacent);
                edges += adjacent as usize;
            }
        }
        assert_eq!(edges, 12);
        assert_eq!(g.regular_degree(), Some(3));
        // bipartite by parity of weight
        assert!(g
            .edges()
            .all(|(u, v)| u.count_ones() % 2 != v.count_ones() % 2));
    }

    #[test]
    fn hamming_rejects_bad_dims() {
        assert!(matches!(
            hamming_graph(0, &[1]),
            Err(Error::DimensionOutOfRange(..))
        ));
        assert!(matches!(
            hamming_graph(17, &[1]),
            Err(Error::DimensionOutOfRange(..))
        ));
        assert!(hamming_graph(3, &[4]).is_err());
        assert!(hamming_graph(3, &[0]).is_err());
    }

    #[test]
    fn complement_cases() {
        let g = cube5_graph();
        let c = g.complement();
        assert_eq!(c.regular_degree(), Some(16));
        assert_eq!(c.complement(), g);
        assert_eq!(Graph::empty(4).complement(), Graph::complete(4));
        assert_eq!(Graph::complete(4).regular_degree(), Some(3));
    }

    #[test]
    fn product_with_k1_is_identity() {
        let g = cube5_graph();
        let p = strong_product(&Graph::empty(1), &g).unwrap();
        assert_eq!(p, g);
    }

    #[test]
    fn cube5_product_is_255_regular() {
        let g = cube5_graph();
        let p = strong_product(&g, &g).unwrap();
        assert_eq!(p.n(), 1024);
        assert_eq!(p.regular_degree(), Some(255));
        // ((00000),(00000)) ~ ((00001),(00011)): both coordinates adjacent
        assert!(p.has_edge(0, 32 + 3));
        assert_eq!(strong_power(&g, 2).unwrap(), p);
    }

    #[test]
    fn k2_squared_is_k4() {
        let k2 = Graph::complete(2);
        assert_eq!(strong_power(&k2, 2).unwrap(), Graph::complete(4));
        assert_eq!(strong_power(&k2, 1).unwrap(), k2);
        assert!(strong_power(&k2, 0).is_err());
    }

    #[test]
    fn size_cap_is_enforced() {
        let g = Graph::empty(300);
        assert!(matches!(
            strong_product_capped(&g, &g, 1000),
            Err(Error::SizeCap {
                requested: 90_000,
                cap: 1000
            })
        ));
        assert!(strong_power_capped(&Graph::empty(2), 40, 1 << 16).is_err());
    }

    #[test]
    fn adjacency_matrix_cases() {
        let k2 = Graph::complete(2).adjacency_matrix();
        assert_eq!(k2.get(0, 1), 1.0);
        assert_eq!(k2.get(0, 0), 0.0);
        let a = cube5_graph().adjacency_matrix();
        for i in 0..32 {
            assert_eq!((0..32).map(|j| a.get(i, j)).sum::<f64>(), 15.0);
        }
        let c4 = hamming_graph(2, &[1]).unwrap();
        // 0-1-3-2-0
        for (u, v) in [(0, 1), (1, 3), (3, 2), (2, 0)] {
            assert!(c4.has_edge(u, v));
        }
        assert!(!c4.has_edge(0, 3) && !c4.has_edge(1, 2));
    }

    #[test]
    fn labels() {
        let l = VertexLabel::from_bits(&[1, 0, 0, 1, 0]).unwrap();
        assert_eq!(l.value(), 18);
        assert_eq!(l.bits(), vec![1, 0, 0, 1, 0]);
        let r = VertexLabel::new(5, 29).unwrap();
        assert_eq!(l.distance(r), (18u32 ^ 29).count_ones());
        assert!(VertexLabel::new(5, 32).is_err());
        assert!(VertexLabel::from_bits(&[2]).is_err());
    }

    #[test]
    fn petersen_shape() {
        let p = Graph::petersen();
        assert_eq!(p.n(), 10);
        assert_eq!(p.regular_degree(), Some(3));
        assert_eq!(p.edge_count(), 15);
    }

    #[test]
    fn from_edges_validates() {
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.without_edge(1, 0).edge_count(), 1);
    }
}
