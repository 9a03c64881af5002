//! Matroids given by explicit circuit families, and the matroid of a subspace.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, bit, is_subset, Mask};
use crate::budget::{BudgetExceeded, Meter};
use crate::search::{self, EmptyTrace};
use crate::vspace::{Subspace, VSpaceError};

/// Ground sets above this size skip the circuit elimination check.
const AXIOM_CHECK_LIMIT: usize = 16;
/// Largest ground set accepted by [`CircuitMatroid::has_minor`].
pub const MINOR_SEARCH_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("element {0} is both deleted and contracted")]
    Overlap(usize),
    #[error("element {index} outside ground set of size {size}")]
    BadIndex { index: usize, size: usize },
    #[error("ground set of size {size} exceeds the limit {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("not a circuit family: {0}")]
    NotCircuits(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitMatroid {
    size: usize,
    circuits: Vec<Mask>,
}

impl fmt::Debug for CircuitMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<Vec<usize>> = self.circuits.iter().map(|&c| bits::elements(c)).collect();
        write!(f, "CircuitMatroid({}, {:?})", self.size, cs)
    }
}

/// Circuits of the matroid of `s`: minimal supports of its nonzero points.
pub fn matroid_of(s: &Subspace) -> Result<CircuitMatroid, VSpaceError> {
    if s.n() > 64 {
        return Err(VSpaceError::BadIndex { index: 64, n: s.n() });
    }
    let supports: Vec<Mask> = s
        .points()?
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .fold(0, |m, (i, &x)| if x != 0 { m | bit(i) } else { m })
        })
        .filter(|&m| m != 0)
        .collect();
    let m = CircuitMatroid {
        size: s.n(),
        circuits: bits::minimal_sets(supports),
    };
    assert_eq!(
        s.dim() + m.rank(),
        s.n(),
        "dimension plus matroid rank must equal the number of coordinates"
    );
    Ok(m)
}

impl CircuitMatroid {
    /// Builds a matroid, minimalising the given sets and checking the
    /// circuit axioms (elimination is only checked on small ground sets).
    pub fn new(size: usize, sets: Vec<Mask>) -> Result<CircuitMatroid, MatroidError> {
        if size > 64 {
            return Err(MatroidError::TooLarge { size, cap: 64 });
        }
        if sets.contains(&0) {
            return Err(MatroidError::NotCircuits("empty circuit".into()));
        }
        if let Some(&m) = sets.iter().find(|&&m| !is_subset(m, bits::full(size))) {
            return Err(MatroidError::BadIndex {
                index: 63 - m.leading_zeros() as usize,
                size,
            });
        }
        let circuits = bits::minimal_sets(sets);
        let m = CircuitMatroid { size, circuits };
        if size <= AXIOM_CHECK_LIMIT {
            if let Some((a, b, e)) = m.elimination_failure() {
                return Err(MatroidError::NotCircuits(format!(
                    "no circuit inside {:?} minus {e}",
                    bits::elements(a | b)
                )));
            }
        }
        Ok(m)
    }

    fn elimination_failure(&self) -> Option<(Mask, Mask, usize)> {
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                for e in bits::elements(a & b) {
                    let rest = (a | b) & !bit(e);
                    if !self.circuits.iter().any(|&c| is_subset(c, rest)) {
                        return Some((a, b, e));
                    }
                }
            }
        }
        None
    }

    pub fn size(&self) -> usize {
        self.size
    }
    pub fn circuits(&self) -> &[Mask] {
        &self.circuits
    }

    pub fn circuit_lists(&self) -> Vec<Vec<usize>> {
        self.circuits.iter().map(|&c| bits::elements(c)).collect()
    }

    pub fn is_independent(&self, set: Mask) -> bool {
        !self.circuits.iter().any(|&c| is_subset(c, set))
    }

    /// Greedy rank of the whole ground set.
    pub fn rank(&self) -> usize {
        let mut indep = 0;
        for e in 0..self.size {
            if self.is_independent(indep | bit(e)) {
                indep |= bit(e);
            }
        }
        indep.count_ones() as usize
    }

    /// `M \ delete / contract`, with the remaining elements renumbered in order.
    pub fn minor(&self, delete: &[usize], contract: &[usize]) -> Result<CircuitMatroid, MatroidError> {
        for &e in delete.iter().chain(contract) {
            if e >= self.size {
                return Err(MatroidError::BadIndex {
                    index: e,
                    size: self.size,
                });
            }
        }
        if let Some(&e) = delete.iter().find(|e| contract.contains(e)) {
            return Err(MatroidError::Overlap(e));
        }
        let del = bits::mask_of(delete);
        let con = bits::mask_of(contract);
        let keep: Vec<usize> = (0..self.size)
            .filter(|&e| (del | con) & bit(e) == 0)
            .collect();
        let sets: Vec<Mask> = self
            .circuits
            .iter()
            .filter(|&&c| c & del == 0)
            .map(|&c| bits::compress(c & !con, &keep))
            .filter(|&c| c != 0)
            .collect();
        Ok(CircuitMatroid {
            size: keep.len(),
            circuits: bits::minimal_sets(sets),
        })
    }

    /// Connected components; elements in no circuit form singleton components.
    /// Sorted by smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.size).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for &c in &self.circuits {
            let els = bits::elements(c);
            for &e in &els[1..] {
                let (a, b) = (find(&mut parent, els[0]), find(&mut parent, e));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.size];
        for e in 0..self.size {
            let r = find(&mut parent, e);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(e);
        }
        groups
    }

    /// Series classes: elements contained in exactly the same circuits.
    /// Elements in no circuit are singleton classes. Sorted by smallest element.
    pub fn series_classes(&self) -> Vec<Vec<usize>> {
        let signature = |e: usize| -> Vec<usize> {
            (0..self.circuits.len())
                .filter(|&i| self.circuits[i] & bit(e) != 0)
                .collect()
        };
        let sigs: Vec<Vec<usize>> = (0..self.size).map(signature).collect();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; self.size];
        for e in 0..self.size {
            if assigned[e] {
                continue;
            }
            let mut class = vec![e];
            assigned[e] = true;
            if !sigs[e].is_empty() {
                for f in e + 1..self.size {
                    if !assigned[f] && sigs[f] == sigs[e] {
                        class.push(f);
                        assigned[f] = true;
                    }
                }
            }
            classes.push(class);
        }
        classes
    }

    /// Two distinct circuits sharing an element.
    pub fn intersecting_circuits(&self) -> Option<(Mask, Mask)> {
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                if a & b != 0 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Restriction to the elements of `part`, renumbered in order.
    pub fn restrict_to(&self, part: &[usize]) -> CircuitMatroid {
        let pm = bits::mask_of(part);
        let circuits = self
            .circuits
            .iter()
            .filter(|&&c| is_subset(c, pm))
            .map(|&c| bits::compress(c, part))
            .collect();
        CircuitMatroid {
            size: part.len(),
            circuits: bits::minimal_sets(circuits),
        }
    }

    pub fn is_isomorphic(&self, other: &CircuitMatroid) -> Option<Vec<usize>> {
        if self.size != other.size {
            return None;
        }
        search::isomorphism(self.size, &self.circuits, &other.circuits)
    }

    /// Per-component structure: coloop, single circuit, subdivision of `A_t`.
    pub fn classify(&self) -> StructureReport {
        let mut components = Vec::new();
        for comp in self.components() {
            let sub = self.restrict_to(&comp);
            let kind = classify_connected(&sub);
            components.push(ComponentReport {
                elements: comp,
                kind,
            });
        }
        let all_disjoint_circuits = self.intersecting_circuits().is_none();
        let all_structured = components
            .iter()
            .all(|c| c.kind != ComponentKind::Unclassified);
        StructureReport {
            components,
            all_disjoint_circuits,
            all_structured,
        }
    }

    /// Exhaustive search for a minor isomorphic to `target`.
    pub fn has_minor(
        &self,
        target: MatroidTarget,
        meter: &mut Meter,
    ) -> Result<Option<MatroidMinor>, MatroidError> {
        self.find_minor_of(&target.matroid(), meter)
    }

    pub fn find_minor_of(
        &self,
        target: &CircuitMatroid,
        meter: &mut Meter,
    ) -> Result<Option<MatroidMinor>, MatroidError> {
        if self.size > MINOR_SEARCH_LIMIT {
            return Err(MatroidError::TooLarge {
                size: self.size,
                cap: MINOR_SEARCH_LIMIT,
            });
        }
        let found = search::find_minor(
            self.size,
            &self.circuits,
            target.size,
            &target.circuits,
            EmptyTrace::Ignored,
            meter,
        )?;
        Ok(found.map(|f| MatroidMinor {
            delete: bits::elements(f.delete),
            contract: bits::elements(f.contract),
            map: f.map,
        }))
    }
}

fn classify_connected(m: &CircuitMatroid) -> ComponentKind {
    if m.circuits.is_empty() {
        return ComponentKind::Coloop;
    }
    if m.circuits.len() == 1 && m.circuits[0] == bits::full(m.size) {
        return ComponentKind::Circuit;
    }
    let classes = m.series_classes();
    let t = classes.len();
    let contract: Vec<usize> = classes.iter().flat_map(|c| c[1..].iter().copied()).collect();
    let reduced = m.minor(&[], &contract).expect("disjoint by construction");
    let is_at = t >= 3
        && reduced.circuits.len() == t * (t - 1) / 2
        && reduced.circuits.iter().all(|c| c.count_ones() == 2);
    if is_at {
        ComponentKind::SubdivisionOfA { t }
    } else {
        ComponentKind::Unclassified
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    Coloop,
    Circuit,
    SubdivisionOfA { t: usize },
    Unclassified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub elements: Vec<usize>,
    pub kind: ComponentKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub components: Vec<ComponentReport>,
    pub all_disjoint_circuits: bool,
    pub all_structured: bool,
}

/// A minor `M \ delete / contract` whose element `map[i]` plays target element `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidMinor {
    pub delete: Vec<usize>,
    pub contract: Vec<usize>,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatroidTarget {
    U24,
    MK4e,
    A3,
    MK4,
}

impl MatroidTarget {
    pub fn matroid(self) -> CircuitMatroid {
        match self {
            MatroidTarget::U24 => uniform(2, 4),
            MatroidTarget::A3 => parallel(3),
            MatroidTarget::MK4e => {
                // edges 1..5 of K4/e: 2,4 and 3,5 are parallel pairs, 1 joins
                // their far ends
                let cs: [&[usize]; 6] = [
                    &[1, 3],
                    &[2, 4],
                    &[0, 1, 2],
                    &[0, 1, 4],
                    &[0, 2, 3],
                    &[0, 3, 4],
                ];
                CircuitMatroid::new(5, cs.iter().map(|c| bits::mask_of(c)).collect())
                    .expect("valid circuits")
            }
            MatroidTarget::MK4 => {
                // edges 01 02 03 12 13 23
                let cs: [&[usize]; 7] = [
                    &[0, 1, 3],
                    &[0, 2, 4],
                    &[1, 2, 5],
                    &[3, 4, 5],
                    &[0, 2, 3, 5],
                    &[0, 1, 4, 5],
                    &[1, 2, 3, 4],
                ];
                CircuitMatroid::new(6, cs.iter().map(|c| bits::mask_of(c)).collect())
                    .expect("valid circuits")
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MatroidTarget::U24 => "U24",
            MatroidTarget::MK4e => "MK4e",
            MatroidTarget::A3 => "A3",
            MatroidTarget::MK4 => "MK4",
        }
    }
}

/// `U_{r,n}`: circuits are all `(r+1)`-subsets.
pub fn uniform(r: usize, n: usize) -> CircuitMatroid {
    CircuitMatroid::new(n, bits::k_subsets(n, r + 1)).expect("uniform matroid")
}

/// The cycle matroid of `A_t`: every 2-subset is a circuit.
pub fn parallel(t: usize) -> CircuitMatroid {
    uniform(1, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vspace::Point;

    fn sp(q: u32, n: usize, rows: &[&[u8]]) -> Subspace {
        let rows: Vec<Point> = rows.iter().map(|r| r.to_vec()).collect();
        Subspace::from_rows(q, n, &rows).unwrap()
    }

    #[test]
    fn r11_is_a3() {
        let m = matroid_of(&sp(2, 3, &[&[0, 1, 1], &[1, 0, 1]])).unwrap();
        assert_eq!(m.circuits(), parallel(3).circuits());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn zero_space_has_no_circuits() {
        let m = matroid_of(&sp(5, 4, &[])).unwrap();
        assert!(m.circuits().is_empty());
        assert_eq!(m.components().len(), 4);
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn zero_sum_over_gf4_is_a3() {
        let f = crate::gf::build_field(4).unwrap();
        let m = matroid_of(&Subspace::zero_sum(&f, 3)).unwrap();
        assert!(m.is_isomorphic(&parallel(3)).is_some());
    }

    #[test]
    fn deletion_and_contraction() {
        let a3 = parallel(3);
        assert_eq!(a3.minor(&[0], &[]).unwrap().circuits(), &[0b11]);
        // U24 / e: all 2-subsets of the remaining three
        let u = uniform(2, 4).minor(&[], &[0]).unwrap();
        assert_eq!(u.circuits(), parallel(3).circuits());
        assert_eq!(a3.minor(&[0], &[0]), Err(MatroidError::Overlap(0)));
    }

    #[test]
    fn components_and_series() {
        let m = matroid_of(&sp(3, 3, &[&[1, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(m.components(), vec![vec![0, 1], vec![2]]);
        assert_eq!(parallel(3).series_classes(), vec![vec![0], vec![1], vec![2]]);
        let s = matroid_of(&sp(4, 5, &[&[1, 1, 1, 0, 0], &[1, 1, 0, 1, 1]])).unwrap();
        assert_eq!(s.series_classes(), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }

    #[test]
    fn classification() {
        let r = parallel(3).classify();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].kind, ComponentKind::SubdivisionOfA { t: 3 });
        let c = matroid_of(&sp(5, 3, &[&[1, 1, 1]])).unwrap().classify();
        assert_eq!(c.components[0].kind, ComponentKind::Circuit);
        let u = uniform(2, 4).classify();
        assert_eq!(u.components[0].kind, ComponentKind::Unclassified);
        assert!(!u.all_structured);
    }

    #[test]
    fn target_minors() {
        let mut m = Meter::unlimited();
        let a3 = parallel(3);
        let found = a3.has_minor(MatroidTarget::A3, &mut m).unwrap().unwrap();
        assert!(found.delete.is_empty() && found.contract.is_empty());
        let u = uniform(2, 4);
        assert!(u.has_minor(MatroidTarget::U24, &mut m).unwrap().is_some());
        let disjoint = matroid_of(&sp(3, 4, &[&[1, 1, 0, 0], &[0, 0, 1, 2]])).unwrap();
        assert!(disjoint.has_minor(MatroidTarget::A3, &mut m).unwrap().is_none());
        // M(K4) contains M(K4/e) and A3
        let k4 = MatroidTarget::MK4.matroid();
        assert!(k4.has_minor(MatroidTarget::MK4e, &mut m).unwrap().is_some());
        assert!(k4.has_minor(MatroidTarget::U24, &mut m).unwrap().is_none());
    }

    #[test]
    fn intersecting_pairs() {
        let (a, b) = parallel(3).intersecting_circuits().unwrap();
        assert_ne!(a & b, 0);
        let d = matroid_of(&sp(3, 3, &[&[1, 1, 0], &[0, 0, 1]])).unwrap();
        assert!(d.intersecting_circuits().is_none());
    }

    #[test]
    fn rejects_non_matroids() {
        // two 2-circuits sharing an element without the third pair
        assert!(matches!(
            CircuitMatroid::new(3, vec![0b011, 0b110]),
            Err(MatroidError::NotCircuits(_))
        ));
        assert!(CircuitMatroid::new(3, vec![0]).is_err());
    }
}
