//! Quivers, paths and the subpath/overlap combinatorics used by reduction.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::QuiverError;
use crate::order::AdmissibleOrder;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ArrowId(pub usize);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver with named vertices and arrows. Parallel arrows and loops
/// are allowed; ids are dense indices in declaration order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_names: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let n = vertex_names.len();
        for (i, name) in vertex_names.iter().enumerate() {
            if vertex_names[..i].contains(name) {
                return Err(QuiverError::DuplicateVertex(name.clone()));
            }
        }
        for (i, arrow) in arrows.iter().enumerate() {
            if arrow.source.0 >= n || arrow.target.0 >= n {
                return Err(QuiverError::DanglingArrow(arrow.name.clone()));
            }
            if arrows[..i].iter().any(|a| a.name == arrow.name) {
                return Err(QuiverError::DuplicateArrow(arrow.name.clone()));
            }
            if vertex_names.contains(&arrow.name) {
                return Err(QuiverError::DuplicateArrow(arrow.name.clone()));
            }
        }
        Ok(Quiver {
            vertex_names,
            arrows,
        })
    }

    /// Convenience constructor from `(name, source, target)` triples.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, QuiverError> {
        let vertex_names: Vec<String> = vertices.iter().map(|v| String::from(*v)).collect();
        let lookup = |name: &str| {
            vertex_names
                .iter()
                .position(|v| v == name)
                .map(VertexId)
                .ok_or_else(|| QuiverError::UnknownVertex(String::from(name)))
        };
        let mut built = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            built.push(Arrow {
                name: String::from(*name),
                source: lookup(s)?,
                target: lookup(t)?,
            });
        }
        Quiver::new(vertex_names, built)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|v| v == name).map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(i, _)| ArrowId(i))
    }

    /// True when every arrow name is a single character, so words may be juxtaposed.
    pub fn single_letter_arrows(&self) -> bool {
        self.arrows.iter().all(|a| a.name.chars().count() == 1)
    }

    pub fn trivial_path(&self, v: VertexId) -> Path {
        Path::trivial(v)
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        let arrow = &self.arrows[a.0];
        Path {
            origin: arrow.source,
            end: arrow.target,
            arrows: alloc::vec![a],
        }
    }

    /// Builds the path traversing `arrows` left to right; `None` if not composable.
    pub fn path(&self, arrows: &[ArrowId]) -> Option<Path> {
        let first = *arrows.first()?;
        let mut end = self.arrows.get(first.0)?.source;
        for a in arrows {
            let arrow = self.arrows.get(a.0)?;
            if arrow.source != end {
                return None;
            }
            end = arrow.target;
        }
        Some(Path {
            origin: self.arrows[first.0].source,
            end,
            arrows: arrows.to_vec(),
        })
    }

    /// Path from arrow names, e.g. `["a", "b"]`.
    pub fn path_by_names(&self, names: &[&str]) -> Option<Path> {
        let ids: Option<Vec<ArrowId>> = names.iter().map(|n| self.arrow_by_name(n)).collect();
        self.path(&ids?)
    }

    /// Path from a juxtaposed word of single-letter arrow names, e.g. `"cde"`.
    pub fn word(&self, word: &str) -> Option<Path> {
        let mut buf = [0u8; 4];
        let names: Vec<String> = word
            .chars()
            .map(|c| String::from(c.encode_utf8(&mut buf) as &str))
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.path_by_names(&refs)
    }

    /// Vertex sequence of `p`: origin, then the target of each arrow.
    pub fn vertex_sequence(&self, p: &Path) -> Vec<VertexId> {
        let mut seq = Vec::with_capacity(p.len() + 1);
        seq.push(p.origin);
        seq.extend(p.arrows.iter().map(|a| self.arrows[a.0].target));
        seq
    }

    /// Whether `p` passes through `v` anywhere, endpoints included.
    pub fn visits(&self, p: &Path, v: VertexId) -> bool {
        p.origin == v || p.arrows.iter().any(|a| self.arrows[a.0].target == v)
    }

    pub fn visits_any(&self, p: &Path, set: &BTreeSet<VertexId>) -> bool {
        set.contains(&p.origin) || p.arrows.iter().any(|a| set.contains(&self.arrows[a.0].target))
    }

    /// Whether `v` occurs strictly inside `p`, with at least one arrow on each side.
    pub fn is_properly_internal(&self, v: VertexId, p: &Path) -> bool {
        let n = p.len();
        n >= 2 && p.arrows[..n - 1].iter().any(|a| self.arrows[a.0].target == v)
    }

    /// Every factorization `p = prefix · t · suffix`, ordered by position.
    pub fn subpath_occurrences(&self, t: &Path, p: &Path) -> Vec<(Path, Path)> {
        if t.is_trivial() {
            let seq = self.vertex_sequence(p);
            return seq
                .iter()
                .enumerate()
                .filter(|(_, v)| **v == t.origin)
                .map(|(i, _)| p.split_around(i, t))
                .collect();
        }
        p.window_positions(t)
            .map(|i| p.split_around(i, t))
            .collect()
    }

    /// All paths of length at most `max_len`, sorted ascending under `order`.
    pub fn paths_up_to_length(&self, max_len: usize, order: &AdmissibleOrder) -> Vec<Path> {
        let mut all: Vec<Path> = self.vertices().map(Path::trivial).collect();
        let mut frontier: Vec<Path> = self.arrow_ids().map(|a| self.arrow_path(a)).collect();
        let mut len = 1;
        while len <= max_len && !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows_from(p.end) {
                    next.push(p.extend_right(a, self.arrows[a.0].target));
                }
            }
            all.append(&mut frontier);
            frontier = next;
            len += 1;
        }
        order.sort(&mut all);
        all
    }

    /// The subquiver on the vertices outside `removed`, with every arrow touching
    /// `removed` dropped. Surviving vertices and arrows keep their names and
    /// relative order.
    pub fn without_vertices(&self, removed: &BTreeSet<VertexId>) -> (Quiver, Embedding) {
        let mut vertex_map = Vec::with_capacity(self.vertex_count());
        let mut names = Vec::new();
        for v in self.vertices() {
            if removed.contains(&v) {
                vertex_map.push(None);
            } else {
                vertex_map.push(Some(VertexId(names.len())));
                names.push(self.vertex_names[v.0].clone());
            }
        }
        let mut arrow_map = Vec::with_capacity(self.arrow_count());
        let mut arrows = Vec::new();
        for arrow in &self.arrows {
            match (vertex_map[arrow.source.0], vertex_map[arrow.target.0]) {
                (Some(s), Some(t)) => {
                    arrow_map.push(Some(ArrowId(arrows.len())));
                    arrows.push(Arrow {
                        name: arrow.name.clone(),
                        source: s,
                        target: t,
                    });
                }
                _ => arrow_map.push(None),
            }
        }
        (
            Quiver {
                vertex_names: names,
                arrows,
            },
            Embedding {
                vertex_map,
                arrow_map,
            },
        )
    }

    pub fn display_path<'a>(&'a self, p: &'a Path) -> PathDisplay<'a> {
        PathDisplay { quiver: self, path: p }
    }
}

/// Maps ids of a quiver to ids of a subquiver obtained by deleting vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Embedding {
    pub vertex_map: Vec<Option<VertexId>>,
    pub arrow_map: Vec<Option<ArrowId>>,
}

impl Embedding {
    /// The image of `p` in the subquiver, if `p` avoids every deleted vertex.
    pub fn map_path(&self, p: &Path) -> Option<Path> {
        let arrows: Option<Vec<ArrowId>> = p.arrows.iter().map(|a| self.arrow_map[a.0]).collect();
        Some(Path {
            origin: self.vertex_map[p.origin.0]?,
            end: self.vertex_map[p.end.0]?,
            arrows: arrows?,
        })
    }

    pub fn map_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.vertex_map.get(v.0).copied().flatten()
    }
}

/// A directed path: a vertex (length 0) or a composable arrow sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Path {
    origin: VertexId,
    end: VertexId,
    arrows: Vec<ArrowId>,
}

/// Overlap of two tips: a proper suffix of the first equals a proper prefix of
/// the second. `glued` is the path covering both.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Overlap {
    pub glued: Path,
    /// Number of shared arrows.
    pub shared: usize,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path {
            origin: v,
            end: v,
            arrows: Vec::new(),
        }
    }

    pub fn origin(&self) -> VertexId {
        self.origin
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self · other`, defined when `self` ends where `other` starts.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.end != other.origin {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.len() + other.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            origin: self.origin,
            end: other.end,
            arrows,
        })
    }

    fn extend_right(&self, a: ArrowId, target: VertexId) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path {
            origin: self.origin,
            end: target,
            arrows,
        }
    }

    /// Start indices (in arrows) where positive-length `t` occurs as a window.
    pub fn window_positions<'a>(&'a self, t: &'a Path) -> impl Iterator<Item = usize> + 'a {
        let k = t.len();
        let n = self.len();
        let last = if k == 0 || k > n { 0 } else { n - k + 1 };
        (0..last).filter(move |&i| self.arrows[i..i + k] == t.arrows[..])
    }

    /// Whether positive-length `t` is a subpath of `self`.
    pub fn contains(&self, t: &Path) -> bool {
        self.window_positions(t).next().is_some()
    }

    /// Splits `self` around an occurrence of `t` starting at arrow position `i`.
    pub(crate) fn split_around(&self, i: usize, t: &Path) -> (Path, Path) {
        let prefix = Path {
            origin: self.origin,
            end: t.origin,
            arrows: self.arrows[..i].to_vec(),
        };
        let suffix = Path {
            origin: t.end,
            end: self.end,
            arrows: self.arrows[i + t.len()..].to_vec(),
        };
        (prefix, suffix)
    }

    /// Every overlap of `self` (left) with `other` (right), shortest shared part first.
    pub fn overlaps(&self, other: &Path) -> Vec<Overlap> {
        let (n1, n2) = (self.len(), other.len());
        let mut found = Vec::new();
        for k in 1..n1.min(n2) {
            if self.arrows[n1 - k..] == other.arrows[..k] {
                let mut arrows = self.arrows.clone();
                arrows.extend_from_slice(&other.arrows[k..]);
                found.push(Overlap {
                    glued: Path {
                        origin: self.origin,
                        end: other.end,
                        arrows,
                    },
                    shared: k,
                });
            }
        }
        found
    }

    /// First `k` arrows as a path ending at `end`.
    pub(crate) fn prefix(&self, k: usize, end: VertexId) -> Path {
        Path {
            origin: self.origin,
            end,
            arrows: self.arrows[..k].to_vec(),
        }
    }

    /// Arrows from position `k` on, as a path starting at `origin`.
    pub(crate) fn suffix_from(&self, k: usize, origin: VertexId) -> Path {
        Path {
            origin,
            end: self.end,
            arrows: self.arrows[k..].to_vec(),
        }
    }
}

pub struct PathDisplay<'a> {
    quiver: &'a Quiver,
    path: &'a Path,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return f.write_str(self.quiver.vertex_name(self.path.origin));
        }
        let sep = if self.quiver.single_letter_arrows() { "" } else { "*" };
        for (i, a) in self.path.arrows.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            f.write_str(&self.quiver.arrow(*a).name)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::string::ToString;

    #[test]
    fn compose_identity_and_mismatch() {
        let q = fixtures::example2_quiver();
        let v1 = q.trivial_path(VertexId(0));
        let a = q.word("a").unwrap();
        let b = q.word("b").unwrap();
        let c = q.word("c").unwrap();
        assert_eq!(v1.compose(&a), Some(a.clone()));
        assert_eq!(a.compose(&b), q.word("ab"));
        assert_eq!(a.compose(&c), None);
    }

    #[test]
    fn subpath_occurrences_examples() {
        let q = fixtures::example2_quiver();
        let cd = q.word("cd").unwrap();
        let cde = q.word("cde").unwrap();
        let occ = q.subpath_occurrences(&cd, &cde);
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].0, q.trivial_path(VertexId(0)));
        assert_eq!(occ[0].1, q.word("e").unwrap());

        assert_eq!(
            q.subpath_occurrences(&cde, &cde),
            alloc::vec![(q.trivial_path(VertexId(0)), q.trivial_path(VertexId(0)))]
        );

        let dec = q.word("dec").unwrap();
        let e = q.word("e").unwrap();
        assert_eq!(
            q.subpath_occurrences(&e, &dec),
            alloc::vec![(q.word("d").unwrap(), q.word("c").unwrap())]
        );
    }

    #[test]
    fn trivial_subpath_occurs_at_every_visit() {
        let q = fixtures::example2_quiver();
        // e a c d: v4 -> v1 -> v2 ... ; ecd visits v4, v1, v3, v4
        let ecd = q.word("ecd").unwrap();
        let v4 = q.trivial_path(VertexId(3));
        assert_eq!(q.subpath_occurrences(&v4, &ecd).len(), 2);
    }

    #[test]
    fn overlap_examples() {
        let q = fixtures::example2_quiver();
        let w = |s| q.word(s).unwrap();
        let ov = w("ab").overlaps(&w("be"));
        assert_eq!(ov.len(), 1);
        assert_eq!(ov[0].glued, w("abe"));
        assert!(w("ab").overlaps(&w("cd")).is_empty());
        let ov = w("ea").overlaps(&w("ab"));
        assert_eq!(ov.len(), 1);
        assert_eq!(ov[0].glued, w("eab"));
    }

    #[test]
    fn paths_up_to_length_counts() {
        let q = fixtures::example2_quiver();
        let ord = AdmissibleOrder::default_for(&q);
        assert_eq!(q.paths_up_to_length(0, &ord).len(), 4);
        assert_eq!(q.paths_up_to_length(1, &ord).len(), 9);
        let two = q.paths_up_to_length(2, &ord);
        assert_eq!(two.len(), 15);
        let mut words: Vec<_> = two
            .iter()
            .filter(|p| p.len() == 2)
            .map(|p| q.display_path(p).to_string())
            .collect();
        words.sort();
        assert_eq!(words, ["ab", "be", "cd", "de", "ea", "ec"]);
    }

    #[test]
    fn properly_internal_ignores_endpoints() {
        let q = fixtures::example2_quiver();
        let ea = q.word("ea").unwrap();
        assert!(q.is_properly_internal(VertexId(0), &ea));
        assert!(!q.is_properly_internal(VertexId(3), &ea));
        assert!(!q.is_properly_internal(VertexId(1), &ea));
    }

    #[test]
    fn without_vertices_keeps_names() {
        let q = fixtures::example2_quiver();
        let removed: BTreeSet<_> = [VertexId(1)].into_iter().collect();
        let (sub, emb) = q.without_vertices(&removed);
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.arrow_count(), 3);
        assert_eq!(sub.vertex_name(VertexId(1)), "v3");
        let cd = emb.map_path(&q.word("cd").unwrap()).unwrap();
        assert_eq!(sub.display_path(&cd).to_string(), "cd");
        assert!(emb.map_path(&q.word("ab").unwrap()).is_none());
    }
}
