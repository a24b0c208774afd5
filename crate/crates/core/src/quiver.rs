//! Quivers without loops or 2-cycles, stored as skew-symmetric exchange matrices.
//!
//! Entry `b[i][j]` counts arrows `i -> j` minus arrows `j -> i`, so a positive
//! entry means `b[i][j]` parallel arrows with tail `i` and head `j`. Opposite
//! arrows cancel on construction, which makes 2-cycles unrepresentable and
//! equality canonical.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::QuiverError;

/// Index of a vertex inside one quiver. Indices are contiguous from 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Whether a vertex came with the input or was introduced by the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Original,
    Inserted,
}

/// A bundle of `multiplicity` parallel arrows `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub tail: VertexId,
    pub head: VertexId,
    pub multiplicity: u32,
}

#[derive(Debug, Clone)]
pub struct Quiver {
    n: usize,
    // row-major n*n
    b: Vec<i64>,
    labels: Vec<String>,
    provenance: Vec<Provenance>,
}

impl Quiver {
    /// Arrowless quiver on `n` original vertices labelled `1..=n`.
    pub fn new(n: usize) -> Self {
        Quiver {
            n,
            b: vec![0; n * n],
            labels: (1..=n).map(|i| i.to_string()).collect(),
            provenance: vec![Provenance::Original; n],
        }
    }

    /// Arrowless quiver with the given labels, all original.
    pub fn with_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, QuiverError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(QuiverError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        Ok(Quiver {
            n,
            b: vec![0; n * n],
            labels,
            provenance: vec![Provenance::Original; n],
        })
    }

    /// Builds a quiver on `n` vertices labelled `1..=n` from arrow copies given
    /// with 1-based endpoints. Repeated pairs accumulate; opposite pairs cancel.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let mut q = Quiver::new(n);
        for &(t, h) in arrows {
            if t == 0 || h == 0 {
                return Err(QuiverError::UnknownVertex(0));
            }
            q.add_arrows(VertexId(t - 1), VertexId(h - 1), 1)?;
        }
        Ok(q)
    }

    /// Builds a quiver from a full matrix; rejects non-square or non-skew-symmetric input.
    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self, QuiverError> {
        let n = rows.len();
        let mut q = Quiver::new(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(QuiverError::NotSquare { row: i, len: row.len(), n });
            }
            for (j, &v) in row.iter().enumerate() {
                q.b[i * n + j] = v;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if q.entry(i, j) != -q.entry(j, i) {
                    return Err(QuiverError::NotSkewSymmetric { i, j });
                }
            }
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self, v: VertexId) -> Provenance {
        self.provenance[v.0]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label).map(VertexId)
    }

    pub(crate) fn set_provenance(&mut self, v: VertexId, p: Provenance) {
        self.provenance[v.0] = p;
    }

    #[inline]
    pub(crate) fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n + j]
    }

    /// `b[i][j]`: arrows `i -> j` minus arrows `j -> i`.
    pub fn get(&self, i: VertexId, j: VertexId) -> i64 {
        self.entry(i.0, j.0)
    }

    /// Number of arrows `i -> j` (zero when the net direction is `j -> i`).
    pub fn arrows_between(&self, i: VertexId, j: VertexId) -> u32 {
        self.get(i, j).max(0) as u32
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<(), QuiverError> {
        if v.0 < self.n {
            Ok(())
        } else {
            Err(QuiverError::UnknownVertex(v.0))
        }
    }

    /// Adds `m` arrows `t -> h`, cancelling against any arrows `h -> t`.
    pub fn add_arrows(&mut self, t: VertexId, h: VertexId, m: i64) -> Result<(), QuiverError> {
        self.check_vertex(t)?;
        self.check_vertex(h)?;
        if t == h {
            return Err(QuiverError::Loop(t.0));
        }
        let n = self.n;
        self.b[t.0 * n + h.0] += m;
        self.b[h.0 * n + t.0] -= m;
        Ok(())
    }

    /// All arrow bundles, sorted by `(tail, head)`.
    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.entry(i, j);
                if v > 0 {
                    out.push(Arrow { tail: VertexId(i), head: VertexId(j), multiplicity: v as u32 });
                }
            }
        }
        out
    }

    /// Sum of all arrow multiplicities.
    pub fn arrow_count(&self) -> u64 {
        self.b.iter().filter(|&&v| v > 0).map(|&v| v as u64).sum()
    }

    pub fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let row = &self.b[v.0 * self.n..(v.0 + 1) * self.n];
        row.iter().enumerate().filter(|(_, &x)| x > 0).map(|(j, _)| VertexId(j))
    }

    pub fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let row = &self.b[v.0 * self.n..(v.0 + 1) * self.n];
        row.iter().enumerate().filter(|(_, &x)| x < 0).map(|(j, _)| VertexId(j))
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.predecessors(v).count()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.successors(v).count()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.entry(i, j) == -self.entry(j, i)))
    }

    /// Fomin–Zelevinsky mutation at `k`:
    /// `b'[i][j] = -b[i][j]` if `k` is `i` or `j`, otherwise
    /// `b[i][j] + sign(b[i][k]) * max(b[i][k] * b[k][j], 0)`.
    pub fn mutate(&self, k: VertexId) -> Result<Quiver, QuiverError> {
        self.check_vertex(k)?;
        let n = self.n;
        let k = k.0;
        let mut out = self.clone();
        for i in 0..n {
            let bik = self.entry(i, k);
            for j in 0..n {
                out.b[i * n + j] = if i == k || j == k {
                    -self.entry(i, j)
                } else {
                    self.entry(i, j) + bik.signum() * (bik * self.entry(k, j)).max(0)
                };
            }
        }
        debug_assert!(out.is_skew_symmetric());
        Ok(out)
    }

    /// Mutates at each vertex of `ks` in order.
    pub fn mutate_sequence(&self, ks: &[VertexId]) -> Result<Quiver, QuiverError> {
        let mut q = self.clone();
        for &k in ks {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    /// True iff the support digraph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm over the support digraph; `None` if a cycle exists.
    /// Ties resolve to the smallest index.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let mut indeg: Vec<usize> = self.vertices().map(|v| self.in_degree(v)).collect();
        let mut ready: BTreeSet<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop_first() {
            order.push(VertexId(v));
            for w in self.successors(VertexId(v)) {
                indeg[w.0] -= 1;
                if indeg[w.0] == 0 {
                    ready.insert(w.0);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// Vertices with no incoming arrow and at least one outgoing arrow.
    pub fn sources(&self) -> BTreeSet<VertexId> {
        self.vertices()
            .filter(|&v| self.in_degree(v) == 0 && self.out_degree(v) > 0)
            .collect()
    }

    /// Vertices with no outgoing arrow and at least one incoming arrow.
    pub fn sinks(&self) -> BTreeSet<VertexId> {
        self.vertices()
            .filter(|&v| self.out_degree(v) == 0 && self.in_degree(v) > 0)
            .collect()
    }

    /// Every vertex is a source or a sink (isolated vertices count as either).
    pub fn is_bipartite(&self) -> bool {
        self.vertices().all(|v| self.in_degree(v) == 0 || self.out_degree(v) == 0)
    }

    /// Appends an inserted vertex `v` with one arrow `head(a) -> v` and one
    /// arrow `v -> tail(a)`. The arrow `a` itself is left untouched.
    pub fn insert_framed_vertex(&self, a: &Arrow) -> Result<(Quiver, VertexId), QuiverError> {
        self.check_vertex(a.tail)?;
        self.check_vertex(a.head)?;
        if self.get(a.tail, a.head) <= 0 {
            return Err(QuiverError::MissingArrow {
                tail: self.label(a.tail).to_string(),
                head: self.label(a.head).to_string(),
            });
        }
        let label = self.fresh_label();
        let mut q = self.extended(label, Provenance::Inserted);
        let v = VertexId(self.n);
        q.add_arrows(a.head, v, 1)?;
        q.add_arrows(v, a.tail, 1)?;
        Ok((q, v))
    }

    /// Copy of `self` with one extra isolated vertex.
    pub fn extended(&self, label: String, provenance: Provenance) -> Quiver {
        let n = self.n + 1;
        let mut b = vec![0; n * n];
        for i in 0..self.n {
            b[i * n..i * n + self.n].copy_from_slice(&self.b[i * self.n..(i + 1) * self.n]);
        }
        let mut labels = self.labels.clone();
        labels.push(label);
        let mut prov = self.provenance.clone();
        prov.push(provenance);
        Quiver { n, b, labels, provenance: prov }
    }

    /// `v<k>` with `k` the 1-based position of the next vertex, bumped past any
    /// label already in use.
    pub fn fresh_label(&self) -> String {
        let mut k = self.n + 1;
        loop {
            let candidate = format!("v{k}");
            if self.vertex_by_label(&candidate).is_none() {
                return candidate;
            }
            k += 1;
        }
    }

    /// Full subquiver on `keep`, in the order given. Labels and provenance follow.
    pub fn restrict(&self, keep: &[VertexId]) -> Result<Quiver, QuiverError> {
        let mut seen = BTreeSet::new();
        for &v in keep {
            self.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(QuiverError::DuplicateVertex(v.0));
            }
        }
        let m = keep.len();
        let mut b = vec![0; m * m];
        for (a, &i) in keep.iter().enumerate() {
            for (c, &j) in keep.iter().enumerate() {
                b[a * m + c] = self.get(i, j);
            }
        }
        Ok(Quiver {
            n: m,
            b,
            labels: keep.iter().map(|&v| self.labels[v.0].clone()).collect(),
            provenance: keep.iter().map(|&v| self.provenance[v.0]).collect(),
        })
    }

    /// Matrix equality; labels and provenance are ignored.
    pub fn equal(&self, other: &Quiver) -> bool {
        self.n == other.n && self.b == other.b
    }

    /// Renames all vertices; provenance is kept.
    pub fn relabel<S: Into<String>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Quiver, QuiverError> {
        let fresh = Quiver::with_labels(labels)?;
        if fresh.n != self.n {
            return Err(QuiverError::LabelCount { expected: self.n, got: fresh.n });
        }
        Ok(Quiver { labels: fresh.labels, ..self.clone() })
    }

    /// Arrow list in `tail->head` form using labels, for diagnostics.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .arrows()
            .iter()
            .map(|a| {
                let base = format!("{}->{}", self.label(a.tail), self.label(a.head));
                if a.multiplicity > 1 {
                    format!("{base}x{}", a.multiplicity)
                } else {
                    base
                }
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.equal(other)
    }
}

impl Eq for Quiver {}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}
