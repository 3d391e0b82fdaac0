//! Face-map polyhedra as abstract cell complexes.
//!
//! The cells of the polyhedron of a word `w` of length `d + 1` are the pairs
//! (representative of the class of `w`, partition into consecutive blocks),
//! two pairs being identified when their blocks are blockwise equivalent.
//! A block of size `s` contributes `s − 1` to the cell dimension; merging two
//! adjacent blocks passes to a cell one dimension higher.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{smith_normal_form, IntMatrix};
use crate::simplicial::FaceWord;

/// Sizes of consecutive blocks of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockPartition {
    pub sizes: Vec<usize>,
}

impl BlockPartition {
    /// `Σ (sᵢ − 1)`.
    pub fn dimension(&self) -> usize {
        self.sizes.iter().map(|s| s - 1).sum()
    }

    /// The blocks of `indices`, which must have total length `Σ sᵢ`.
    pub fn split<'a>(&self, indices: &'a [usize]) -> Vec<&'a [usize]> {
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut pos = 0;
        for &s in &self.sizes {
            out.push(&indices[pos..pos + s]);
            pos += s;
        }
        debug_assert_eq!(pos, indices.len());
        out
    }

    /// All compositions of `n`, ordered by number of parts then
    /// lexicographically.
    pub fn compositions(n: usize) -> Vec<BlockPartition> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        for mask in 0..1u64 << (n - 1) {
            let mut sizes = Vec::new();
            let mut run = 1;
            for k in 0..n - 1 {
                if mask >> k & 1 == 1 {
                    sizes.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            sizes.push(run);
            out.push(BlockPartition { sizes });
        }
        out.sort_by(|a, b| {
            a.sizes
                .len()
                .cmp(&b.sizes.len())
                .then(a.sizes.cmp(&b.sizes))
        });
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellLabel {
    pub representative: FaceWord,
    pub blocks: BlockPartition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub id: usize,
    pub dim: usize,
    /// Facets with incidence signs, sorted by facet id.
    pub boundary: Vec<(usize, i8)>,
    pub label: CellLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub cells: Vec<Cell>,
}

/// Normalized blocks, each tagged with its starting position.
type CellKey = Vec<(usize, Vec<usize>)>;

fn block_key(rep: &FaceWord, partition: &BlockPartition) -> Result<CellKey> {
    let mut pos = rep.start();
    let mut key = Vec::with_capacity(partition.sizes.len());
    for block in partition.split(rep.indices()) {
        let w = FaceWord::new(pos, block.to_vec())?.normalize();
        key.push((pos, w.indices().to_vec()));
        pos += block.len();
    }
    Ok(key)
}

fn merge_key(key: &CellKey, j: usize) -> Result<CellKey> {
    let mut out = key[..j].to_vec();
    let (pos, first) = &key[j];
    let mut merged = first.clone();
    merged.extend(key[j + 1].1.iter().copied());
    let w = FaceWord::new(*pos, merged)?.normalize();
    out.push((*pos, w.indices().to_vec()));
    out.extend(key[j + 2..].iter().cloned());
    Ok(out)
}

/// Builds the face-map polyhedron of `w`.
pub fn build_face_polyhedron(w: &FaceWord) -> Result<CellComplex> {
    let len = w.len();
    let members = w.class_members();
    let partitions = BlockPartition::compositions(len);

    let mut ids: HashMap<CellKey, usize> = HashMap::new();
    let mut keys: Vec<CellKey> = Vec::new();
    let mut labels: Vec<CellLabel> = Vec::new();
    // finest partitions first, so that the vertices get the lowest ids
    for partition in partitions.iter().rev() {
        for rep in &members {
            let key = block_key(rep, partition)?;
            if !ids.contains_key(&key) {
                ids.insert(key.clone(), keys.len());
                keys.push(key);
                labels.push(CellLabel {
                    representative: rep.clone(),
                    blocks: partition.clone(),
                });
            }
        }
    }
    let dims: Vec<usize> = labels.iter().map(|l| l.blocks.dimension()).collect();

    let mut facets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); keys.len()];
    for (a, key) in keys.iter().enumerate() {
        for j in 0..key.len().saturating_sub(1) {
            let merged = merge_key(key, j)?;
            let b = *ids
                .get(&merged)
                .ok_or_else(|| Error::Structural("merged cell missing".into()))?;
            facets[b].insert(a);
        }
    }

    let boundary = orient(&dims, &facets, &labels)?;
    let cells = (0..keys.len())
        .map(|id| Cell {
            id,
            dim: dims[id],
            boundary: boundary[id].clone(),
            label: labels[id].clone(),
        })
        .collect();
    let complex = CellComplex { cells };
    complex.check_boundary_squares_to_zero()?;
    Ok(complex)
}

/// Edge signs follow the lexicographic order of permutation labels; higher
/// cells are oriented by propagating across shared ridges so that the
/// boundary of their boundary cancels.
fn orient(
    dims: &[usize],
    facets: &[BTreeSet<usize>],
    labels: &[CellLabel],
) -> Result<Vec<Vec<(usize, i8)>>> {
    let n = dims.len();
    let mut boundary: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
    let max_dim = dims.iter().copied().max().unwrap_or(0);
    for dim in 1..=max_dim {
        for c in (0..n).filter(|&c| dims[c] == dim) {
            let fs: Vec<usize> = facets[c].iter().copied().collect();
            if dim == 1 {
                if fs.len() != 2 {
                    return Err(Error::Structural(format!("edge {c} has {} ends", fs.len())));
                }
                let la = labels[fs[0]].representative.permutation_label();
                let lb = labels[fs[1]].representative.permutation_label();
                let (hi, lo) = if la > lb {
                    (fs[0], fs[1])
                } else {
                    (fs[1], fs[0])
                };
                let mut b = vec![(hi, 1i8), (lo, -1i8)];
                b.sort();
                boundary[c] = b;
                continue;
            }
            // ridge -> facets of c containing it, with incidence signs
            let mut ridges: BTreeMap<usize, Vec<(usize, i8)>> = BTreeMap::new();
            for &f in &fs {
                for &(r, s) in &boundary[f] {
                    ridges.entry(r).or_default().push((f, s));
                }
            }
            let mut sign: BTreeMap<usize, i8> = BTreeMap::new();
            let mut queue = VecDeque::new();
            sign.insert(fs[0], 1);
            queue.push_back(fs[0]);
            while let Some(f) = queue.pop_front() {
                let ef = sign[&f];
                for &(r, sf) in &boundary[f] {
                    for &(g, sg) in &ridges[&r] {
                        if g == f {
                            continue;
                        }
                        let eg = -ef * sf * sg;
                        match sign.get(&g) {
                            Some(&e) if e != eg => {
                                return Err(Error::Structural(format!(
                                    "cell {c} is not orientable"
                                )))
                            }
                            Some(_) => {}
                            None => {
                                sign.insert(g, eg);
                                queue.push_back(g);
                            }
                        }
                    }
                }
            }
            if sign.len() != fs.len() {
                return Err(Error::Structural(format!(
                    "boundary of cell {c} is disconnected"
                )));
            }
            boundary[c] = sign.into_iter().collect();
        }
    }
    Ok(boundary)
}

/// Reduced homology group `ℤ^rank ⊕ ⨁ ℤ/tᵢ` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl CellComplex {
    pub fn dimension(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(move |c| c.dim == dim)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dimension())
            .map(|d| self.cells_of_dim(d).count())
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.cells_of_dim(0).count()
    }

    /// Vertex ids of every cell, indexed by cell id.
    pub fn vertex_sets(&self) -> Vec<BTreeSet<usize>> {
        let mut order: Vec<&Cell> = self.cells.iter().collect();
        order.sort_by_key(|c| c.dim);
        let mut sets = vec![BTreeSet::new(); self.cells.len()];
        for c in order {
            if c.dim == 0 {
                sets[c.id].insert(c.id);
            } else {
                let mut s = BTreeSet::new();
                for &(f, _) in &c.boundary {
                    s.extend(sets[f].iter().copied());
                }
                sets[c.id] = s;
            }
        }
        sets
    }

    /// Number of facets of the top cell containing each vertex.
    pub fn vertex_facet_degrees(&self) -> Vec<usize> {
        let d = self.dimension();
        let sets = self.vertex_sets();
        self.cells_of_dim(0)
            .map(|v| {
                self.cells_of_dim(d.saturating_sub(1))
                    .filter(|f| sets[f.id].contains(&v.id))
                    .count()
            })
            .collect()
    }

    /// Facets of the top cell grouped by their number of vertices.
    pub fn facet_census(&self) -> BTreeMap<usize, usize> {
        let sets = self.vertex_sets();
        let mut census = BTreeMap::new();
        if self.dimension() == 0 {
            return census;
        }
        for f in self.cells_of_dim(self.dimension() - 1) {
            *census.entry(sets[f.id].len()).or_insert(0) += 1;
        }
        census
    }

    /// `∂_dim` as a matrix from `dim`-cells to `(dim−1)`-cells, with the
    /// cell ids indexing rows and columns.
    pub fn boundary_matrix(&self, dim: usize) -> (IntMatrix, Vec<usize>, Vec<usize>) {
        let rows: Vec<usize> = self.cells_of_dim(dim - 1).map(|c| c.id).collect();
        let cols: Vec<usize> = self.cells_of_dim(dim).map(|c| c.id).collect();
        let row_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for &(f, s) in &self.cells[c].boundary {
                m.set(row_of[&f], j, i128::from(s));
            }
        }
        (m, rows, cols)
    }

    pub fn check_boundary_squares_to_zero(&self) -> Result<()> {
        for c in &self.cells {
            for &(f, _) in &c.boundary {
                if self.cells[f].dim + 1 != c.dim {
                    return Err(Error::Structural(format!(
                        "cell {} of dimension {} has boundary cell {f} of dimension {}",
                        c.id, c.dim, self.cells[f].dim
                    )));
                }
            }
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(f, s) in &c.boundary {
                for &(g, t) in &self.cells[f].boundary {
                    *acc.entry(g).or_insert(0) += i64::from(s) * i64::from(t);
                }
            }
            if let Some((g, _)) = acc.iter().find(|(_, &v)| v != 0) {
                return Err(Error::Structural(format!(
                    "∂∂ ≠ 0 on cell {} at cell {g}",
                    c.id
                )));
            }
        }
        Ok(())
    }

    /// Reduced integer homology of the `k`-skeleton, degrees `0..=k`.
    pub fn boundary_homology(&self, k: usize) -> Result<Vec<HomologyGroup>> {
        self.check_boundary_squares_to_zero()?;
        let counts: Vec<usize> = (0..=k).map(|d| self.cells_of_dim(d).count()).collect();
        // ranks[d] = rank of ∂_d : C_d → C_{d−1}, with ∂_0 the augmentation
        let mut ranks = vec![0usize; k + 2];
        let mut torsion: Vec<Vec<u64>> = vec![Vec::new(); k + 2];
        for d in 0..=k {
            let m = if d == 0 {
                let mut m = IntMatrix::zeros(1, counts[0]);
                for j in 0..counts[0] {
                    m.set(0, j, 1);
                }
                m
            } else {
                self.boundary_matrix(d).0
            };
            let s = smith_normal_form(&m, false)?;
            ranks[d] = s.rank();
            torsion[d] = s
                .diagonal
                .iter()
                .filter(|&&x| x > 1)
                .map(|&x| x as u64)
                .collect();
        }
        Ok((0..=k)
            .map(|d| HomologyGroup {
                degree: d,
                rank: counts[d] - ranks[d] - ranks[d + 1],
                torsion: torsion[d + 1].clone(),
            })
            .collect())
    }

    /// Euler characteristic of the `k`-skeleton.
    pub fn euler_characteristic(&self, k: usize) -> i64 {
        (0..=k)
            .map(|d| {
                let n = self.cells_of_dim(d).count() as i64;
                if d % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    /// Faces as `(dim, vertex set)`, vertices renumbered `0..V`.
    fn face_family(&self) -> (usize, Vec<(usize, BTreeSet<usize>)>) {
        let sets = self.vertex_sets();
        let vertex_index: HashMap<usize, usize> = self
            .cells_of_dim(0)
            .enumerate()
            .map(|(i, c)| (c.id, i))
            .collect();
        let faces = self
            .cells
            .iter()
            .map(|c| (c.dim, sets[c.id].iter().map(|v| vertex_index[v]).collect()))
            .collect();
        (vertex_index.len(), faces)
    }

    /// OFF description of a 2- or 3-dimensional polyhedron. Vertices sit at
    /// their permutation coordinates, projected onto the hyperplane
    /// `Σ xᵢ = const` for `d = 3`.
    pub fn to_off(&self) -> Result<String> {
        let d = self.dimension();
        if !(2..=3).contains(&d) {
            return Err(Error::Dimension(format!(
                "OFF export needs d ∈ {{2, 3}}, got {d}"
            )));
        }
        let vertices: Vec<&Cell> = self.cells_of_dim(0).collect();
        let index: HashMap<usize, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id, i))
            .collect();
        let mut out = String::new();
        let faces: Vec<&Cell> = self.cells_of_dim(2).collect();
        writeln!(out, "OFF").ok();
        writeln!(out, "{} {} 0", vertices.len(), faces.len()).ok();
        for v in &vertices {
            let label = v.label.representative.permutation_label();
            let mut x = vec![0f64; label.len()];
            for (t, &e) in label.iter().enumerate() {
                x[e] = (t + 1) as f64;
            }
            let p = if d == 2 {
                x
            } else {
                let s2 = 2f64.sqrt();
                let s6 = 6f64.sqrt();
                let s12 = 12f64.sqrt();
                vec![
                    (x[0] - x[1]) / s2,
                    (x[0] + x[1] - 2.0 * x[2]) / s6,
                    (x[0] + x[1] + x[2] - 3.0 * x[3]) / s12,
                ]
            };
            let coords: Vec<String> = p.iter().map(|c| format!("{c:.6}")).collect();
            writeln!(out, "{}", coords.join(" ")).ok();
        }
        for f in faces {
            let cycle = self.face_cycle(f)?;
            let ids: Vec<String> = cycle.iter().map(|v| index[v].to_string()).collect();
            writeln!(out, "{} {}", ids.len(), ids.join(" ")).ok();
        }
        Ok(out)
    }

    /// Boundary vertices of a 2-cell in cyclic order.
    fn face_cycle(&self, f: &Cell) -> Result<Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(e, _) in &f.boundary {
            let ends: Vec<usize> = self.cells[e].boundary.iter().map(|&(v, _)| v).collect();
            adj.entry(ends[0]).or_default().push(ends[1]);
            adj.entry(ends[1]).or_default().push(ends[0]);
        }
        let start = *adj
            .keys()
            .next()
            .ok_or_else(|| Error::Structural("empty face".into()))?;
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = adj[&cur].iter().copied().find(|&v| v != prev);
            match next {
                Some(v) if v == start => break,
                Some(v) => {
                    prev = cur;
                    cur = v;
                    cycle.push(v);
                    if cycle.len() > adj.len() {
                        return Err(Error::Structural("face boundary is not a cycle".into()));
                    }
                }
                None => return Err(Error::Structural("face boundary is not a cycle".into())),
            }
        }
        Ok(cycle)
    }
}

/// Faces of the standard `d`-permutohedron: ordered set partitions of
/// `0..=d`, each containing the orders which list its blocks in turn.
pub fn standard_permutohedron(d: usize) -> (usize, Vec<(usize, BTreeSet<usize>)>) {
    let n = d + 1;
    let perms = permutations(n);
    let index: HashMap<Vec<usize>, usize> = perms
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut faces = Vec::new();
    for partition in ordered_set_partitions(n) {
        let mut vertex_set = BTreeSet::new();
        extend_orders(&partition, 0, &mut Vec::new(), &index, &mut vertex_set);
        faces.push((n - partition.len(), vertex_set));
    }
    (perms.len(), faces)
}

fn extend_orders(
    blocks: &[Vec<usize>],
    k: usize,
    prefix: &mut Vec<usize>,
    index: &HashMap<Vec<usize>, usize>,
    out: &mut BTreeSet<usize>,
) {
    if k == blocks.len() {
        out.insert(index[prefix]);
        return;
    }
    for p in permutations(blocks[k].len()) {
        let before = prefix.len();
        prefix.extend(p.iter().map(|&i| blocks[k][i]));
        extend_orders(blocks, k + 1, prefix, index, out);
        prefix.truncate(before);
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn ordered_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // choose the first block as a nonempty subset, recurse on the rest
    fn rec(rest: &[usize], prefix: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for mask in 1..1u64 << rest.len() {
            let block: Vec<usize> = (0..rest.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| rest[i])
                .collect();
            let remaining: Vec<usize> = (0..rest.len())
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| rest[i])
                .collect();
            prefix.push(block);
            rec(&remaining, prefix, out);
            prefix.pop();
        }
    }
    let all: Vec<usize> = (0..n).collect();
    rec(&all, &mut Vec::new(), &mut out);
    out
}

/// Whether two face families (dimension, vertex set) are isomorphic as
/// lattices: invariant comparison, then a backtracking search for a vertex
/// bijection preserving edges, accepted once it carries faces to faces.
pub fn face_lattices_isomorphic(
    a: &(usize, Vec<(usize, BTreeSet<usize>)>),
    b: &(usize, Vec<(usize, BTreeSet<usize>)>),
) -> bool {
    let (na, fa) = a;
    let (nb, fb) = b;
    if na != nb || fa.len() != fb.len() {
        return false;
    }
    let signature = |f: &[(usize, BTreeSet<usize>)]| {
        let mut s: Vec<(usize, usize)> = f.iter().map(|(d, v)| (*d, v.len())).collect();
        s.sort_unstable();
        s
    };
    if signature(fa) != signature(fb) {
        return false;
    }
    let adjacency = |n: usize, f: &[(usize, BTreeSet<usize>)]| {
        let mut adj = vec![BTreeSet::new(); n];
        for (d, v) in f {
            if *d == 1 && v.len() == 2 {
                let e: Vec<usize> = v.iter().copied().collect();
                adj[e[0]].insert(e[1]);
                adj[e[1]].insert(e[0]);
            }
        }
        adj
    };
    let adj_a = adjacency(*na, fa);
    let adj_b = adjacency(*nb, fb);
    let mut da: Vec<usize> = adj_a.iter().map(BTreeSet::len).collect();
    let mut db: Vec<usize> = adj_b.iter().map(BTreeSet::len).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let faces_b: BTreeSet<(usize, BTreeSet<usize>)> = fb.iter().cloned().collect();

    // BFS order over the 1-skeleton of `a`
    let mut order = Vec::with_capacity(*na);
    let mut seen = vec![false; *na];
    for root in 0..*na {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut q = VecDeque::from([root]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &w in &adj_a[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }

    struct Search<'a> {
        order: &'a [usize],
        adj_a: &'a [BTreeSet<usize>],
        adj_b: &'a [BTreeSet<usize>],
        faces_a: &'a [(usize, BTreeSet<usize>)],
        faces_b: &'a BTreeSet<(usize, BTreeSet<usize>)>,
        image: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn run(&mut self, k: usize) -> bool {
            if k == self.order.len() {
                return self.faces_a.iter().all(|(d, vs)| {
                    let img: BTreeSet<usize> = vs.iter().map(|v| self.image[*v].unwrap()).collect();
                    self.faces_b.contains(&(*d, img))
                });
            }
            let v = self.order[k];
            let mapped: Vec<usize> = self.adj_a[v]
                .iter()
                .filter_map(|&w| self.image[w])
                .collect();
            let candidates: Vec<usize> = match mapped.first() {
                Some(&m) => self.adj_b[m].iter().copied().collect(),
                None => (0..self.used.len()).collect(),
            };
            for c in candidates {
                if self.used[c]
                    || self.adj_b[c].len() != self.adj_a[v].len()
                    || !mapped.iter().all(|m| self.adj_b[c].contains(m))
                {
                    continue;
                }
                self.image[v] = Some(c);
                self.used[c] = true;
                if self.run(k + 1) {
                    return true;
                }
                self.image[v] = None;
                self.used[c] = false;
            }
            false
        }
    }

    let mut s = Search {
        order: &order,
        adj_a: &adj_a,
        adj_b: &adj_b,
        faces_a: fa,
        faces_b: &faces_b,
        image: vec![None; *na],
        used: vec![false; *nb],
    };
    s.run(0)
}

/// Whether `c` has the face lattice of the standard `d`-permutohedron.
pub fn is_permutohedron(c: &CellComplex, d: usize) -> bool {
    face_lattices_isomorphic(&c.face_family(), &standard_permutohedron(d))
}
