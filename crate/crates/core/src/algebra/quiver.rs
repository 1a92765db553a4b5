//! Path algebras `kQ/I` of finite quivers with homogeneous relations.

use std::collections::HashMap;

use super::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{quotient, unit_vector, zero_vector, Echelon, Quotient};

/// A path, listing arrows in the order they are traversed. Trivial paths
/// have no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Vertices `0..vertices`, arrows as `(source, target)`, relations as
/// linear combinations of paths (each a list of arrow indices in traversal
/// order), and an optional saturation cutoff.
#[derive(Clone, Debug)]
pub struct QuiverPresentation<F> {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub relations: Vec<Vec<(F, Vec<usize>)>>,
    pub cutoff: Option<usize>,
}

impl<F: Field> QuiverPresentation<F> {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Self {
        QuiverPresentation {
            vertices,
            arrows,
            relations: Vec::new(),
            cutoff: None,
        }
    }

    pub fn with_relation(mut self, relation: Vec<(F, Vec<usize>)>) -> Self {
        self.relations.push(relation);
        self
    }

    pub fn default_cutoff(&self) -> usize {
        let s = self.vertices + self.arrows.len();
        2 * s * s
    }

    fn path(&self, arrows: &[usize]) -> Result<Path> {
        let (&first, rest) = arrows
            .split_first()
            .ok_or_else(|| Error::InvalidAlgebra("relations may not contain trivial paths".into()))?;
        let (source, mut target) = *self
            .arrows
            .get(first)
            .ok_or_else(|| Error::InvalidAlgebra(format!("unknown arrow {first}")))?;
        for &a in rest {
            let (s, t) = *self
                .arrows
                .get(a)
                .ok_or_else(|| Error::InvalidAlgebra(format!("unknown arrow {a}")))?;
            if s != target {
                return Err(Error::InvalidAlgebra(format!("arrows {arrows:?} do not compose")));
            }
            target = t;
        }
        Ok(Path {
            source,
            target,
            arrows: arrows.to_vec(),
        })
    }
}

/// A path algebra together with the path labelling its basis.
#[derive(Clone, Debug)]
pub struct PathAlgebra<F> {
    pub algebra: Algebra<F>,
    pub basis: Vec<Path>,
}

struct Degree<F> {
    paths: Vec<Path>,
    index: HashMap<Vec<usize>, usize>,
    quotient: Quotient<F>,
    offset: usize,
}

impl<F: Field> PathAlgebra<F> {
    /// Builds `kQ/I`. Paths of each length are reduced modulo the degree
    /// component of the ideal until every path of some length lies in it.
    pub fn new(q: &QuiverPresentation<F>) -> Result<Self> {
        if q.vertices == 0 {
            return Err(Error::InvalidAlgebra("quiver without vertices".into()));
        }
        if let Some(&(s, t)) = q.arrows.iter().find(|(s, t)| *s >= q.vertices || *t >= q.vertices) {
            return Err(Error::InvalidAlgebra(format!("arrow ({s}, {t}) leaves the vertex set")));
        }
        let mut by_degree: HashMap<usize, Vec<(Path, Vec<(F, Vec<usize>)>)>> = HashMap::new();
        for rel in &q.relations {
            let rel: Vec<_> = rel.iter().filter(|(c, _)| !c.is_zero()).cloned().collect();
            let Some((_, first)) = rel.first() else { continue };
            let head = q.path(first)?;
            for (_, p) in &rel {
                let path = q.path(p)?;
                if path.source != head.source || path.target != head.target {
                    return Err(Error::InvalidAlgebra(format!(
                        "relation mixes non-parallel paths {first:?} and {p:?}"
                    )));
                }
                if path.len() != head.len() {
                    return Err(Error::Unsupported(
                        "relations must be homogeneous in path length".into(),
                    ));
                }
            }
            by_degree.entry(head.len()).or_default().push((head, rel));
        }

        let cutoff = q.cutoff.unwrap_or_else(|| q.default_cutoff());
        let mut degrees: Vec<Degree<F>> = Vec::new();
        let trivial: Vec<Path> = (0..q.vertices).map(Path::trivial).collect();
        let mut current = trivial;
        let mut ideal_prev: Vec<Vec<F>> = Vec::new();
        let mut offset = 0;
        let mut d = 0;
        loop {
            let index: HashMap<Vec<usize>, usize> = current.iter().enumerate().map(|(i, p)| (key(p), i)).collect();
            let n = current.len();
            let mut ideal = Echelon::new(n);
            if d > 0 {
                let prev = &degrees[d - 1];
                for v in &ideal_prev {
                    for (a, &(s, t)) in q.arrows.iter().enumerate() {
                        let mut after = zero_vector::<F>(n);
                        let mut before = zero_vector::<F>(n);
                        let (mut any_after, mut any_before) = (false, false);
                        for (i, c) in v.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let p = &prev.paths[i];
                            if p.target == s {
                                let mut k = p.arrows.clone();
                                k.push(a);
                                after[index[&k]] = c.clone();
                                any_after = true;
                            }
                            if t == p.source {
                                let mut k = vec![a];
                                k.extend(&p.arrows);
                                before[index[&k]] = c.clone();
                                any_before = true;
                            }
                        }
                        if any_after {
                            ideal.insert(after);
                        }
                        if any_before {
                            ideal.insert(before);
                        }
                    }
                }
            }
            for (_, rel) in by_degree.get(&d).into_iter().flatten() {
                let mut v = zero_vector::<F>(n);
                for (c, p) in rel {
                    let i = index[p];
                    v[i] = v[i].add_ref(c);
                }
                ideal.insert(v);
            }
            let rref = ideal.finish();
            let relations = rref.dense_rows();
            let qt = quotient(n, relations.iter().cloned());
            let qdim = qt.dim();
            degrees.push(Degree {
                paths: current.clone(),
                index,
                quotient: qt,
                offset,
            });
            offset += qdim;
            if qdim == 0 {
                break;
            }
            if d >= cutoff {
                return Err(Error::InfiniteDimensional(d));
            }
            ideal_prev = relations;
            current = extend_paths(&current, &q.arrows);
            d += 1;
        }

        let dim = offset;
        let mut basis = Vec::with_capacity(dim);
        for deg in &degrees {
            for j in 0..deg.quotient.dim() {
                let col = deg.quotient.section.column(j);
                let i = col.iter().position(|c| !c.is_zero()).expect("section vector");
                basis.push(deg.paths[i].clone());
            }
        }
        // coordinates of a path of a given length in the algebra basis
        let coords = |p: &Path| -> Vec<F> {
            let mut out = zero_vector::<F>(dim);
            let Some(deg) = degrees.get(p.len()) else { return out };
            let i = deg.index[&key(p)];
            let v = deg.quotient.projection.column(i);
            for (j, c) in v.into_iter().enumerate() {
                out[deg.offset + j] = c;
            }
            out
        };
        let mut structure = Vec::with_capacity(dim * dim * dim);
        for p in &basis {
            for r in &basis {
                // p * r: first r, then p
                match compose(r, p) {
                    Some(path) => structure.extend(coords(&path)),
                    None => structure.extend(zero_vector::<F>(dim)),
                }
            }
        }
        let mut unit = zero_vector::<F>(dim);
        for v in 0..q.vertices {
            unit = crate::linalg::add_vectors(&unit, &coords(&Path::trivial(v)));
        }
        let algebra = Algebra::from_flat(dim, structure, unit)?;
        algebra
            .validate()
            .map_err(|v| Error::InvalidAlgebra(format!("path algebra: {v}")))?;
        Ok(PathAlgebra { algebra, basis })
    }

    /// Index of the trivial path at vertex `v`.
    pub fn vertex(&self, v: usize) -> usize {
        self.basis
            .iter()
            .position(|p| p.is_empty() && p.source == v)
            .expect("trivial paths survive")
    }

    pub fn vertex_element(&self, v: usize) -> Vec<F> {
        unit_vector(self.algebra.dim(), self.vertex(v))
    }
}

fn key(p: &Path) -> Vec<usize> {
    if p.is_empty() {
        // trivial paths keyed apart from arrow sequences
        vec![usize::MAX, p.source]
    } else {
        p.arrows.clone()
    }
}

fn extend_paths(paths: &[Path], arrows: &[(usize, usize)]) -> Vec<Path> {
    let mut out = Vec::new();
    for p in paths {
        for (a, &(s, t)) in arrows.iter().enumerate() {
            if s == p.target {
                let mut arr = p.arrows.clone();
                arr.push(a);
                out.push(Path {
                    source: p.source,
                    target: t,
                    arrows: arr,
                });
            }
        }
    }
    out.sort_by(|x, y| x.arrows.cmp(&y.arrows));
    out
}

/// `first` followed by `then`, if they meet.
fn compose(first: &Path, then: &Path) -> Option<Path> {
    if first.target != then.source {
        return None;
    }
    let mut arrows = first.arrows.clone();
    arrows.extend(&then.arrows);
    Some(Path {
        source: first.source,
        target: then.target,
        arrows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    #[test]
    fn single_vertex_is_the_field() {
        let pa = PathAlgebra::new(&QuiverPresentation::<Q>::new(1, vec![])).unwrap();
        assert_eq!(pa.algebra.dim(), 1);
        assert_eq!(pa.algebra, Algebra::ground());
    }

    #[test]
    fn a2_quiver() {
        let pa = PathAlgebra::new(&QuiverPresentation::<Q>::new(2, vec![(0, 1)])).unwrap();
        let a = &pa.algebra;
        assert_eq!(a.dim(), 3);
        assert_eq!(pa.basis[2].arrows, vec![0]);
        let (e1, e2, alpha) = (a.basis_element(0), a.basis_element(1), a.basis_element(2));
        assert_eq!(a.mul(&alpha, &e1), alpha);
        assert_eq!(a.mul(&e2, &alpha), alpha);
        assert_eq!(a.mul(&e1, &alpha), a.zero());
        assert_eq!(a.mul(&alpha, &e2), a.zero());
        assert_eq!(a.mul(&alpha, &alpha), a.zero());
        assert_eq!(a.unit(), &[Q::from_i64(1), Q::from_i64(1), Q::from_i64(0)]);
    }

    #[test]
    fn loop_with_square_relation() {
        let q = QuiverPresentation::<Q>::new(1, vec![(0, 0)]).with_relation(vec![(Q::from_i64(1), vec![0, 0])]);
        let pa = PathAlgebra::new(&q).unwrap();
        assert_eq!(pa.algebra, Algebra::truncated_polynomial(2));
    }

    #[test]
    fn free_loop_is_infinite() {
        let q = QuiverPresentation::<Q>::new(1, vec![(0, 0)]);
        assert!(matches!(PathAlgebra::new(&q), Err(Error::InfiniteDimensional(_))));
    }

    #[test]
    fn commutative_square() {
        // 0 -a-> 1 -b-> 3, 0 -c-> 2 -d-> 3, ba = dc
        let one = Q::from_i64(1);
        let q = QuiverPresentation::new(4, vec![(0, 1), (1, 3), (0, 2), (2, 3)])
            .with_relation(vec![(one.clone(), vec![0, 1]), (-one, vec![2, 3])]);
        let pa = PathAlgebra::new(&q).unwrap();
        assert_eq!(pa.algebra.dim(), 4 + 4 + 1);
    }

    #[test]
    fn non_parallel_relation_rejected() {
        let one = Q::from_i64(1);
        let q = QuiverPresentation::new(3, vec![(0, 1), (0, 2)])
            .with_relation(vec![(one.clone(), vec![0]), (one, vec![1])]);
        assert!(matches!(PathAlgebra::new(&q), Err(Error::InvalidAlgebra(_))));
    }
}
