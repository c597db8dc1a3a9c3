//! Permutations of `{1, …, d}`.
//!
//! Composition is left-to-right: `p.then(&q)` (also written `p·q`) applies `p`
//! first and then `q`, so `(p·q)(i) = q(p(i))`. Every other module relies on
//! this convention; the commutator `p·q·p⁻¹·q⁻¹` is taken with respect to it.
//!
//! Points are 1-based in all text I/O. Internally images are stored 0-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("point {point} appears more than once")]
    RepeatedPoint { point: usize },
    #[error("point {point} is out of range for degree {degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection")]
    NotBijection,
    #[error("degree must be at least 1")]
    ZeroDegree,
}

/// A bijection of `{1, …, d}` with `d ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

/// Cycle lengths of a permutation, fixed points included, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn cycle_count(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "]")
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "permutation degree must be at least 1");
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images (`images[i]` is the image of point `i + 1`, minus one).
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        if images.is_empty() {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; images.len()];
        for &j in &images {
            let j = j as usize;
            if j >= images.len() || seen[j] {
                return Err(PermError::NotBijection);
            }
            seen[j] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images.
    pub fn from_one_based(images: &[usize]) -> Result<Self, PermError> {
        let zero = images
            .iter()
            .map(|&j| {
                if j == 0 || j > images.len() {
                    Err(PermError::OutOfRange {
                        point: j,
                        degree: images.len(),
                    })
                } else {
                    Ok((j - 1) as u32)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(zero)
    }

    /// Builds a permutation of the given degree from a list of 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle.iter() {
                if p == 0 || p > degree {
                    return Err(PermError::OutOfRange { point: p, degree });
                }
                if used[p - 1] {
                    return Err(PermError::RepeatedPoint { point: p });
                }
                used[p - 1] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image table.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of the 1-based `point`.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// Image of the 0-based index `i`.
    #[inline]
    pub fn image0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// `self·other`: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in composition"
        );
        Permutation {
            images: self
                .images
                .iter()
                .map(|&j| other.images[j as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `r⁻¹·self·r`, the relabeling of `self` along `r`.
    pub fn conjugate_by(&self, r: &Permutation) -> Permutation {
        r.inverse().then(self).then(r)
    }

    /// Cycles as 0-based point lists, each starting at its smallest point,
    /// sorted by that point. Fixed points are included.
    pub fn cycles0(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.cycles0().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lengths)
    }

    /// Least `k ≥ 1` with `self^k = id`, the lcm of the cycle lengths.
    /// Saturates at `u128::MAX` for pathological degrees.
    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        for len in self.cycles0().iter().map(Vec::len) {
            let len = len as u128;
            let g = gcd(acc, len);
            acc = match (acc / g).checked_mul(len) {
                Some(v) => v,
                None => return u128::MAX,
            };
        }
        acc
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i == j as usize)
            .count()
    }

    /// Canonical cycle notation, see [`format_cycles`].
    pub fn to_cycle_string(&self) -> String {
        format_cycles(self)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `p·q` with a degree check.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    check_degrees(p, q)?;
    Ok(p.then(q))
}

/// `p·q·p⁻¹·q⁻¹`.
pub fn commutator(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    check_degrees(p, q)?;
    Ok(p.then(q).then(&p.inverse()).then(&q.inverse()))
}

fn check_degrees(p: &Permutation, q: &Permutation) -> Result<(), PermError> {
    if p.degree() != q.degree() {
        return Err(PermError::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(())
}

/// Whether the group generated by `perms` has a single orbit on `{1, …, degree}`.
///
/// Orbit closure from point 1 under forward images; for finite groups forward
/// images reach the whole orbit.
pub fn is_transitive(perms: &[Permutation], degree: usize) -> Result<bool, PermError> {
    for p in perms {
        if p.degree() != degree {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: p.degree(),
            });
        }
    }
    if degree <= 1 {
        return Ok(true);
    }
    if perms.is_empty() {
        return Ok(false);
    }
    let mut seen = vec![false; degree];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for p in perms {
            let j = p.image0(i);
            if !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    Ok(count == degree)
}

/// Canonical cycle notation: cycles sorted by smallest element, each starting
/// at its smallest element, fixed points omitted, identity rendered `()`.
pub fn format_cycles(p: &Permutation) -> String {
    let mut out = String::new();
    for cycle in p.cycles0() {
        if cycle.len() < 2 {
            continue;
        }
        out.push('(');
        for (k, i) in cycle.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&(i + 1).to_string());
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses cycle notation for a permutation of the given degree.
///
/// Grammar: `perm := "()" | cycle+`, `cycle := "(" int ("," int)* ")"`.
/// Integers are decimal without leading zeros; ASCII spaces are allowed only
/// directly after commas. Points not mentioned are fixed.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
    if degree == 0 {
        return Err(PermError::ZeroDegree);
    }
    if text == "()" {
        return Ok(Permutation::identity(degree));
    }
    let bytes = text.as_bytes();
    let syntax = |pos: usize, message: &str| PermError::Syntax {
        column: pos + 1,
        message: message.to_string(),
    };
    if bytes.is_empty() {
        return Err(syntax(0, "empty permutation, expected \"()\" or cycles"));
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(syntax(pos, "expected '('"));
        }
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(syntax(pos, "expected a point"));
            }
            if bytes[start] == b'0' && pos - start > 1 {
                return Err(syntax(start, "leading zero"));
            }
            let point: usize = text[start..pos]
                .parse()
                .map_err(|_| syntax(start, "point does not fit in an integer"))?;
            cycle.push(point);
            match bytes.get(pos) {
                Some(b',') => {
                    pos += 1;
                    while pos < bytes.len() && bytes[pos] == b' ' {
                        pos += 1;
                    }
                }
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(_) => return Err(syntax(pos, "expected ',' or ')'")),
                None => return Err(syntax(pos, "unterminated cycle")),
            }
        }
        cycles.push(cycle);
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(degree, &refs)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cycles(self))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), format_cycles(self))
    }
}

/// Parses `"<degree>:<cycles>"`, the self-describing form used by serde.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (d, cycles) = s.split_once(':').ok_or(PermError::Syntax {
            column: 1,
            message: "expected \"<degree>:<cycles>\"".into(),
        })?;
        let degree = d.trim().parse().map_err(|_| PermError::Syntax {
            column: 1,
            message: "bad degree".into(),
        })?;
        parse_cycles(cycles.trim(), degree)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{}:{}", self.degree(), format_cycles(self)))
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
