//! Clutters on labelled ground sets of at most 64 elements.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, bit, Mask};
use crate::budget::{BudgetExceeded, Meter};
use crate::gf::FieldElement;
use crate::search::{self, EmptyTrace};
use crate::vspace::{Point, SetSystem, Subspace, VSpaceError};

pub const MAX_GROUND: usize = 64;
/// Largest ground set accepted by [`Clutter::is_isomorphic`].
pub const ISO_LIMIT: usize = 20;
/// Largest point count accepted by [`mult`].
pub const MULT_POINT_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClutterError {
    #[error("{what} of size {size} exceeds the limit {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("element {0} is both deleted and contracted")]
    Overlap(Label),
    #[error("unknown element {0}")]
    UnknownLabel(Label),
    #[error("duplicate element {0}")]
    DuplicateLabel(Label),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Space(#[from] VSpaceError),
}

/// A ground element: the copy of field value `value` in part `part`, or an
/// opaque integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Cell { part: u32, value: FieldElement },
    Id(u32),
}

impl Label {
    pub fn cell(part: usize, value: FieldElement) -> Label {
        Label::Cell {
            part: part as u32,
            value,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Cell { part, value } => write!(f, "{part}:{value}"),
            Label::Id(i) => write!(f, "{i}"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Label {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((p, v)) = s.split_once(':') {
            let part = p.parse::<u32>().map_err(|e| format!("bad part in {s:?}: {e}"))?;
            let value = v
                .parse::<FieldElement>()
                .map_err(|e| format!("bad value in {s:?}: {e}"))?;
            Ok(Label::Cell { part, value })
        } else {
            s.parse::<u32>()
                .map(Label::Id)
                .map_err(|e| format!("bad element {s:?}: {e}"))
        }
    }
}

/// Delete set `I` and contract set `J`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MinorSpec {
    pub delete: Vec<Label>,
    pub contract: Vec<Label>,
}

impl MinorSpec {
    pub fn new(mut delete: Vec<Label>, mut contract: Vec<Label>) -> MinorSpec {
        delete.sort();
        contract.sort();
        MinorSpec { delete, contract }
    }

    pub fn contract_only(contract: Vec<Label>) -> MinorSpec {
        MinorSpec::new(Vec::new(), contract)
    }

    pub fn delete_only(delete: Vec<Label>) -> MinorSpec {
        MinorSpec::new(delete, Vec::new())
    }
}

impl fmt::Display for MinorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={{{}}} J={{{}}}", join(&self.delete), join(&self.contract))
    }
}

fn join(labels: &[Label]) -> String {
    labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

/// A located minor: `spec` produces a clutter isomorphic to the target, with
/// target element `map[i].0` played by ground element `map[i].1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorEmbedding {
    pub spec: MinorSpec,
    pub map: Vec<(Label, Label)>,
}

impl fmt::Display for MinorEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} map:", self.spec)?;
        for (t, g) in &self.map {
            write!(f, " {t}→{g}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Builtin {
    Delta3,
    Q6,
    C5sq,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Delta3 => "Delta3",
            Builtin::Q6 => "Q6",
            Builtin::C5sq => "C5sq",
        }
    }
}

impl FromStr for Builtin {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "delta3" | "d3" => Ok(Builtin::Delta3),
            "q6" => Ok(Builtin::Q6),
            "c5sq" | "c5^2" | "c52" => Ok(Builtin::C5sq),
            _ => Err(format!("unknown clutter {s:?}")),
        }
    }
}

/// A family of pairwise incomparable subsets (members) of a labelled ground set.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clutter {
    ground: Vec<Label>,
    members: Vec<Mask>,
}

impl fmt::Debug for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clutter{{")?;
        for (i, &m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.format_set(m))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Clutter {
    /// The text exchange format: an `elements:` line, then one member per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "elements: {}", self.ground.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "))?;
        for &m in &self.members {
            let labels: Vec<String> = bits::elements(m)
                .into_iter()
                .map(|i| self.ground[i].to_string())
                .collect();
            writeln!(f, "{}", labels.join(" "))?;
        }
        Ok(())
    }
}

impl Clutter {
    /// Builds a clutter from arbitrary sets, keeping only the minimal ones.
    pub fn from_masks(ground: Vec<Label>, sets: Vec<Mask>) -> Result<Clutter, ClutterError> {
        if ground.len() > MAX_GROUND {
            return Err(ClutterError::TooLarge {
                what: "ground set",
                size: ground.len(),
                cap: MAX_GROUND,
            });
        }
        let mut seen = ground.clone();
        seen.sort();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(ClutterError::DuplicateLabel(w[0]));
        }
        let all = bits::full(ground.len());
        debug_assert!(sets.iter().all(|&s| bits::is_subset(s, all)));
        Ok(Clutter {
            ground,
            members: bits::minimal_sets(sets),
        })
    }

    pub fn from_label_sets(ground: Vec<Label>, sets: &[Vec<Label>]) -> Result<Clutter, ClutterError> {
        let index: HashMap<Label, usize> = ground.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            let mut m = 0;
            for l in s {
                m |= bit(*index.get(l).ok_or(ClutterError::UnknownLabel(*l))?);
            }
            masks.push(m);
        }
        Clutter::from_masks(ground, masks)
    }

    /// Elements `1..=n` with the given 1-based member lists.
    pub fn from_ids(n: u32, sets: &[&[u32]]) -> Clutter {
        let ground = (1..=n).map(Label::Id).collect();
        let masks = sets
            .iter()
            .map(|s| s.iter().fold(0, |m, &e| m | bit(e as usize - 1)))
            .collect();
        Clutter::from_masks(ground, masks).expect("valid literal clutter")
    }

    pub fn builtin(name: Builtin) -> Clutter {
        match name {
            Builtin::Delta3 => Clutter::from_ids(3, &[&[1, 2], &[2, 3], &[3, 1]]),
            Builtin::Q6 => Clutter::from_ids(6, &[&[1, 3, 5], &[1, 4, 6], &[2, 3, 6], &[2, 4, 5]]),
            Builtin::C5sq => {
                Clutter::from_ids(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 1]])
            }
        }
    }

    pub fn ground(&self) -> &[Label] {
        &self.ground
    }
    pub fn members(&self) -> &[Mask] {
        &self.members
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    /// `{∅}`: the clutter whose only member is empty.
    pub fn has_empty_member(&self) -> bool {
        self.members.first() == Some(&0)
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.ground.iter().position(|g| g == l)
    }

    pub fn mask_of(&self, labels: &[Label]) -> Result<Mask, ClutterError> {
        labels.iter().try_fold(0, |m, l| {
            self.index_of(l)
                .map(|i| m | bit(i))
                .ok_or(ClutterError::UnknownLabel(*l))
        })
    }

    pub fn labels_of(&self, m: Mask) -> Vec<Label> {
        bits::elements(m).into_iter().map(|i| self.ground[i]).collect()
    }

    pub fn member_labels(&self) -> Vec<Vec<Label>> {
        self.members.iter().map(|&m| self.labels_of(m)).collect()
    }

    pub fn format_set(&self, m: Mask) -> String {
        format!("{{{}}}", join(&self.labels_of(m)))
    }

    /// `C \ I / J` on ground-index masks.
    pub fn minor_masks(&self, delete: Mask, contract: Mask) -> Result<Clutter, ClutterError> {
        if delete & contract != 0 {
            let e = (delete & contract).trailing_zeros() as usize;
            return Err(ClutterError::Overlap(self.ground[e]));
        }
        let gone = delete | contract;
        let keep: Vec<usize> = (0..self.ground.len()).filter(|&i| gone & bit(i) == 0).collect();
        let sets: Vec<Mask> = self
            .members
            .iter()
            .filter(|&&m| m & delete == 0)
            .map(|&m| bits::compress(m & !contract, &keep))
            .collect();
        Ok(Clutter {
            ground: keep.iter().map(|&i| self.ground[i]).collect(),
            members: bits::minimal_sets(sets),
        })
    }

    /// The minimal sets of `{C - J : C ∈ 𝒞, C ∩ I = ∅}` on ground `V - I - J`.
    pub fn minor(&self, spec: &MinorSpec) -> Result<Clutter, ClutterError> {
        let d = self.mask_of(&spec.delete)?;
        let c = self.mask_of(&spec.contract)?;
        self.minor_masks(d, c)
    }

    /// Applies minors one after another.
    pub fn minor_chain(&self, chain: &[MinorSpec]) -> Result<Clutter, ClutterError> {
        let mut cur = self.clone();
        for spec in chain {
            cur = cur.minor(spec)?;
        }
        Ok(cur)
    }

    /// `{C1 ∪ C2}`; labels of `other` colliding with ours are shifted to fresh
    /// parts or ids.
    pub fn product(&self, other: &Clutter) -> Result<Clutter, ClutterError> {
        let collide = other.ground.iter().any(|l| self.ground.contains(l));
        let other_ground: Vec<Label> = if collide {
            let part_shift = self
                .ground
                .iter()
                .filter_map(|l| match l {
                    Label::Cell { part, .. } => Some(part + 1),
                    Label::Id(_) => None,
                })
                .max()
                .unwrap_or(0);
            let id_shift = self
                .ground
                .iter()
                .filter_map(|l| match l {
                    Label::Id(i) => Some(*i),
                    Label::Cell { .. } => None,
                })
                .max()
                .unwrap_or(0);
            other
                .ground
                .iter()
                .map(|l| match *l {
                    Label::Cell { part, value } => Label::Cell {
                        part: part + part_shift,
                        value,
                    },
                    Label::Id(i) => Label::Id(i + id_shift),
                })
                .collect()
        } else {
            other.ground.clone()
        };
        let n1 = self.ground.len();
        let mut ground = self.ground.clone();
        ground.extend(other_ground);
        if ground.len() > MAX_GROUND {
            return Err(ClutterError::TooLarge {
                what: "ground set",
                size: ground.len(),
                cap: MAX_GROUND,
            });
        }
        let mut sets = Vec::with_capacity(self.members.len() * other.members.len());
        for &a in &self.members {
            for &b in &other.members {
                sets.push(a | (b << n1));
            }
        }
        Clutter::from_masks(ground, sets)
    }

    /// A bijection `map[i]` (index into `other`) carrying members onto members.
    pub fn is_isomorphic(&self, other: &Clutter) -> Result<Option<Vec<usize>>, ClutterError> {
        if self.ground.len() != other.ground.len() {
            return Ok(None);
        }
        if self.ground.len() > ISO_LIMIT {
            return Err(ClutterError::TooLarge {
                what: "isomorphism ground set",
                size: self.ground.len(),
                cap: ISO_LIMIT,
            });
        }
        Ok(search::isomorphism(self.ground.len(), &self.members, &other.members))
    }

    /// Exhaustive search for a minor isomorphic to `target`.
    pub fn find_minor(
        &self,
        target: &Clutter,
        meter: &mut Meter,
    ) -> Result<Option<MinorEmbedding>, ClutterError> {
        if target.ground.len() > search::MAX_TARGET {
            return Err(ClutterError::TooLarge {
                what: "minor target",
                size: target.ground.len(),
                cap: search::MAX_TARGET,
            });
        }
        let found = search::find_minor(
            self.ground.len(),
            &self.members,
            target.ground.len(),
            &target.members,
            EmptyTrace::Fatal,
            meter,
        )?;
        Ok(found.map(|f| MinorEmbedding {
            spec: MinorSpec::new(self.labels_of(f.delete), self.labels_of(f.contract)),
            map: f
                .map
                .iter()
                .enumerate()
                .map(|(t, &g)| (target.ground[t], self.ground[g]))
                .collect(),
        }))
    }

    /// Checks that `emb` turns this clutter into `target` under its map.
    pub fn check_embedding(&self, target: &Clutter, emb: &MinorEmbedding) -> Result<bool, ClutterError> {
        let minor = self.minor(&emb.spec)?;
        if minor.ground.len() != target.ground.len() || emb.map.len() != target.ground.len() {
            return Ok(false);
        }
        let mut perm = vec![usize::MAX; target.ground.len()];
        for (t, g) in &emb.map {
            let (Some(ti), Some(gi)) = (target.index_of(t), minor.index_of(g)) else {
                return Ok(false);
            };
            perm[ti] = gi;
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..perm.len()).collect::<Vec<_>>() {
            return Ok(false);
        }
        let mut image: Vec<Mask> = target.members.iter().map(|&m| bits::permute(m, &perm)).collect();
        image.sort_unstable();
        Ok(image == minor.members)
    }

    /// Rows are members (in stored order), columns follow the ground order.
    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        self.members
            .iter()
            .map(|&m| (0..self.ground.len()).map(|i| ((m >> i) & 1) as u8).collect())
            .collect()
    }

    /// Parses the text exchange format.
    pub fn parse(text: &str) -> Result<Clutter, ClutterError> {
        let mut ground: Option<Vec<Label>> = None;
        let mut sets: Vec<Vec<Label>> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim_end();
            if line.trim().is_empty() {
                continue;
            }
            let err = |column: usize, message: String| ClutterError::Parse {
                line: ln + 1,
                column,
                message,
            };
            if ground.is_none() {
                let Some(rest) = line.trim_start().strip_prefix("elements:") else {
                    return Err(err(1, "expected `elements:` header".into()));
                };
                let offset = raw.len() - rest.len();
                ground = Some(parse_labels(rest, offset).map_err(|(c, m)| err(c, m))?);
                continue;
            }
            sets.push(parse_labels(line, 0).map_err(|(c, m)| err(c, m))?);
        }
        let ground = ground.ok_or(ClutterError::Parse {
            line: 1,
            column: 1,
            message: "missing `elements:` header".into(),
        })?;
        Clutter::from_label_sets(ground, &sets)
    }
}

fn parse_labels(s: &str, offset: usize) -> Result<Vec<Label>, (usize, String)> {
    let mut out = Vec::new();
    let mut pos = 0;
    for tok in s.split_whitespace() {
        let at = s[pos..].find(tok).map(|i| i + pos).unwrap_or(pos);
        pos = at + tok.len();
        out.push(tok.parse::<Label>().map_err(|m| (offset + at + 1, m))?);
    }
    Ok(out)
}

/// `mult(S)`: one part per coordinate, one member per point.
pub fn mult(s: &Subspace) -> Result<Clutter, ClutterError> {
    check_mult_size(s.q() as usize * s.n(), s.point_count())?;
    mult_set_system(&SetSystem::from_subspace(s)?)
}

fn check_mult_size(ground: usize, points: u128) -> Result<(), ClutterError> {
    if ground > MAX_GROUND {
        return Err(ClutterError::TooLarge {
            what: "ground set",
            size: ground,
            cap: MAX_GROUND,
        });
    }
    if points > MULT_POINT_LIMIT as u128 {
        return Err(ClutterError::TooLarge {
            what: "point set",
            size: points.min(usize::MAX as u128) as usize,
            cap: MULT_POINT_LIMIT,
        });
    }
    Ok(())
}

/// `mult` of an explicit point set inside its box; part labels keep the
/// original coordinate indices.
pub fn mult_set_system(sys: &SetSystem) -> Result<Clutter, ClutterError> {
    let ground_size: usize = sys.boxes.iter().map(|b| b.len()).sum();
    check_mult_size(ground_size, sys.points.len() as u128)?;
    let mut ground = Vec::with_capacity(ground_size);
    let mut index: HashMap<(usize, FieldElement), usize> = HashMap::new();
    for (pos, (&coord, b)) in sys.coords.iter().zip(&sys.boxes).enumerate() {
        for &v in b {
            index.insert((pos, v), ground.len());
            ground.push(Label::cell(coord, v));
        }
    }
    let sets = sys
        .points
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .fold(0, |m, (pos, &v)| m | bit(index[&(pos, v)]))
        })
        .collect();
    Clutter::from_masks(ground, sets)
}

/// The minor of `mult(S)` that yields `mult` of a restriction of `S`: delete
/// the values outside each box, contract what is left of the dropped parts.
pub fn restriction_spec(q: u32, sys: &SetSystem) -> MinorSpec {
    let mut delete = Vec::new();
    let mut contract = Vec::new();
    let boxes: Vec<(usize, &Vec<FieldElement>)> = sys
        .coords
        .iter()
        .copied()
        .zip(&sys.boxes)
        .chain(sys.dropped.iter().map(|(c, b)| (*c, b)))
        .collect();
    for (coord, b) in boxes {
        for v in 0..q as FieldElement {
            if !b.contains(&v) {
                delete.push(Label::cell(coord, v));
            }
        }
    }
    for (coord, b) in &sys.dropped {
        for &v in b {
            contract.push(Label::cell(*coord, v));
        }
    }
    MinorSpec::new(delete, contract)
}

/// The minor of `mult(S)` that yields `mult` of the projection dropping `drop`.
pub fn projection_spec(q: u32, drop: &[usize]) -> MinorSpec {
    let contract = drop
        .iter()
        .flat_map(|&j| (0..q as FieldElement).map(move |v| Label::cell(j, v)))
        .collect();
    MinorSpec::contract_only(contract)
}

/// The labels `{(i, v_i)}` of a point.
pub fn point_labels(v: &[FieldElement]) -> Vec<Label> {
    v.iter().enumerate().map(|(i, &x)| Label::cell(i, x)).collect()
}

/// `local(S, v)`: `mult(S)` with one element contracted from each part.
pub fn localization(s: &Subspace, v: &Point) -> Result<Clutter, ClutterError> {
    if v.len() != s.n() {
        return Err(VSpaceError::DimensionMismatch {
            expected: s.n(),
            got: v.len(),
        }
        .into());
    }
    mult(s)?.minor(&MinorSpec::contract_only(point_labels(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(q: u32, n: usize, rows: &[&[u8]]) -> Subspace {
        let rows: Vec<Point> = rows.iter().map(|r| r.to_vec()).collect();
        Subspace::from_rows(q, n, &rows).unwrap()
    }

    fn r11() -> Subspace {
        sp(2, 3, &[&[0, 1, 1], &[1, 0, 1]])
    }

    #[test]
    fn builtins() {
        let d = Clutter::builtin(Builtin::Delta3);
        assert_eq!((d.len(), d.ground_size()), (3, 3));
        let q = Clutter::builtin(Builtin::Q6);
        assert_eq!((q.len(), q.ground_size()), (4, 6));
        let c = Clutter::builtin(Builtin::C5sq);
        assert_eq!((c.len(), c.ground_size()), (5, 5));
    }

    #[test]
    fn mult_r11_is_q6() {
        let m = mult(&r11()).unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.is_isomorphic(&Clutter::builtin(Builtin::Q6)).unwrap().is_some());
        // the relabelling 0/1 in parts 1,2,3 to 1,2 / 3,4 / 5,6
        let relabel: Vec<usize> = (0..6).collect();
        let q6 = Clutter::builtin(Builtin::Q6);
        let mut img: Vec<Mask> = m.members().iter().map(|&x| bits::permute(x, &relabel)).collect();
        img.sort();
        assert_eq!(img, q6.members());
    }

    #[test]
    fn mult_of_zero_line() {
        let m = mult(&sp(3, 1, &[])).unwrap();
        assert_eq!(m.ground_size(), 3);
        assert_eq!(m.member_labels(), vec![vec![Label::cell(0, 0)]]);
    }

    #[test]
    fn mult_members_are_transversals() {
        let s = sp(4, 3, &[&[1, 1, 0], &[1, 0, 1]]);
        let m = mult(&s).unwrap();
        assert_eq!((m.len(), m.ground_size()), (16, 12));
        for mem in m.member_labels() {
            let mut parts: Vec<u32> = mem
                .iter()
                .map(|l| match l {
                    Label::Cell { part, .. } => *part,
                    Label::Id(_) => unreachable!(),
                })
                .collect();
            parts.sort();
            assert_eq!(parts, vec![0, 1, 2]);
        }
    }

    #[test]
    fn minors_by_hand() {
        let d = Clutter::builtin(Builtin::Delta3);
        let m = d.minor(&MinorSpec::delete_only(vec![Label::Id(1)])).unwrap();
        assert_eq!(m.member_labels(), vec![vec![Label::Id(2), Label::Id(3)]]);
        assert_eq!(d.minor(&MinorSpec::default()).unwrap(), d);
        let err = d
            .minor(&MinorSpec::new(vec![Label::Id(1)], vec![Label::Id(1)]))
            .unwrap_err();
        assert_eq!(err, ClutterError::Overlap(Label::Id(1)));
    }

    #[test]
    fn localizations() {
        let s = r11();
        let l0 = localization(&s, &vec![0, 0, 0]).unwrap();
        assert!(l0.has_empty_member());
        assert_eq!(l0.len(), 1);
        let l1 = localization(&s, &vec![1, 0, 0]).unwrap();
        assert_eq!(l1.len(), 3);
        assert!(l1.members().iter().all(|m| m.count_ones() == 1));
    }

    #[test]
    fn gf4_localization_sizes() {
        let f = crate::gf::build_field(4).unwrap();
        let t = Subspace::zero_sum(&f, 3);
        let l = localization(&t, &vec![1, 0, 0]).unwrap();
        assert!(l.members().iter().all(|m| (1..=2).contains(&m.count_ones())));
    }

    #[test]
    fn products() {
        let d = Clutter::builtin(Builtin::Delta3);
        let p = d.product(&d).unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(p.ground_size(), 6);
        let single = Clutter::from_ids(1, &[&[1]]);
        let q = d.product(&single).unwrap();
        assert!(q.members().iter().all(|m| m & bit(3) != 0));
    }

    #[test]
    fn incidence() {
        let d = Clutter::builtin(Builtin::Delta3);
        let m = d.incidence_matrix();
        assert_eq!(m.len(), 3);
        for row in &m {
            assert_eq!(row.iter().filter(|&&x| x == 1).count(), 2);
        }
        let q6 = Clutter::builtin(Builtin::Q6).incidence_matrix();
        // stored order sorts members by mask; {1,3,5} first
        assert!(q6.contains(&vec![1, 0, 1, 0, 1, 0]));
        assert!(q6.contains(&vec![1, 0, 0, 1, 0, 1]));
        assert!(q6.contains(&vec![0, 1, 1, 0, 0, 1]));
        assert!(q6.contains(&vec![0, 1, 0, 1, 1, 0]));
    }

    #[test]
    fn minor_search_examples() {
        let mut meter = Meter::unlimited();
        let d = Clutter::builtin(Builtin::Delta3);
        let q6 = Clutter::builtin(Builtin::Q6);
        let emb = d.find_minor(&d, &mut meter).unwrap().unwrap();
        assert!(emb.spec.delete.is_empty() && emb.spec.contract.is_empty());
        assert!(q6.find_minor(&d, &mut meter).unwrap().is_none());
        let ex = mult(&sp(4, 3, &[&[1, 1, 0], &[1, 0, 1]])).unwrap();
        let e = ex.find_minor(&q6, &mut meter).unwrap().unwrap();
        assert!(ex.check_embedding(&q6, &e).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let m = mult(&r11()).unwrap();
        let text = m.to_string();
        assert_eq!(Clutter::parse(&text).unwrap(), m);
        let err = Clutter::parse("elements: 1 2\n1 x\n").unwrap_err();
        assert!(matches!(err, ClutterError::Parse { line: 2, column: 3, .. }));
        assert!(matches!(
            Clutter::parse("1 2\n"),
            Err(ClutterError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn restriction_and_projection_specs() {
        let s = r11();
        let sys = s.restrict(&[vec![0], vec![0, 1], vec![0, 1]]).unwrap();
        let via_minor = mult(&s).unwrap().minor(&restriction_spec(2, &sys)).unwrap();
        assert_eq!(via_minor, mult_set_system(&sys).unwrap());
        let p = s.project(&[2]).unwrap();
        let pm = mult(&s).unwrap().minor(&projection_spec(2, &[2])).unwrap();
        assert!(pm.is_isomorphic(&mult(&p).unwrap()).unwrap().is_some());
    }
}
