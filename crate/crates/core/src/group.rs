//! Explicitly enumerated finite groups.
//!
//! Elements are indexed `0..order` with 0 the identity. Each group carries a
//! closed-form product where one exists (cyclic, metacyclic, dicyclic, direct
//! and generalized-dihedral products) and falls back to a faithful permutation
//! representation for groups enumerated by closure. A dense multiplication
//! table is only built on demand via [`FiniteGroup::cayley_table`]: witness
//! validation and regular representations touch O(|G|) products while pair
//! searches touch O(|G|²).
//!
//! Products follow the left-to-right convention of [`crate::perm`].

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::perm::{parse_cycles, Permutation};

/// Default upper bound on group orders.
pub const DEFAULT_GROUP_CAP: usize = 20_000;

/// Largest order for which a pair search materializes a multiplication table.
const TABLE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("generators have different degrees")]
    DegreeMismatch,
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("group {0} has no distinguished generating pair")]
    MissingGenerators(String),
    #[error("group {0} is not abelian")]
    NotAbelian(String),
    #[error("pair does not generate the group")]
    NotGenerating,
    #[error("commutator order is {order}, expected 2")]
    CommutatorOrder { order: usize },
    #[error("unsupported catalogue order {0}")]
    UnsupportedOrder(usize),
}

#[derive(Clone)]
enum Structure {
    /// Faithful permutation images, product by composition.
    Permutations {
        elements: Vec<Permutation>,
        index: HashMap<Permutation, u32>,
        inverses: Vec<u32>,
    },
    /// Explicit table for tiny groups given by an abstract product.
    Table {
        products: Vec<u32>,
        inverses: Vec<u32>,
        labels: Vec<String>,
    },
    /// Rotation `k` at index `k`.
    Cyclic { n: usize },
    /// `(x, t)` at index `x + n·t`, `(x,t)(x',t') = (x + uᵗ·x', t + t')`.
    Metacyclic {
        n: usize,
        k: usize,
        powers: Vec<usize>,
    },
    /// `xᵏyᵉ` at index `k + m·e` with `m = 2n`, `y² = xⁿ`, `y⁻¹xy = x⁻¹`.
    Dicyclic { m: usize },
    /// `(g, h)` at index `g·|H| + h`.
    Product {
        left: Box<FiniteGroup>,
        right: Box<FiniteGroup>,
    },
    /// `(a, e)` at index `a + |A|·e`, involution acting by inversion.
    GeneralizedDihedral { base: Box<FiniteGroup> },
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    structure: Structure,
    generators: Option<(usize, usize)>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

/// Dense multiplication table of a group.
pub struct CayleyTable {
    order: usize,
    products: Vec<u32>,
    inverses: Vec<u32>,
}

impl CayleyTable {
    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.products[g * self.order + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g] as usize
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// Product oracle used by searches: a table for small groups, the group itself otherwise.
enum Products<'a> {
    Table(CayleyTable),
    Direct(&'a FiniteGroup),
}

impl Products<'_> {
    fn new(group: &FiniteGroup) -> Products<'_> {
        if group.order() <= TABLE_LIMIT {
            Products::Table(group.cayley_table())
        } else {
            Products::Direct(group)
        }
    }

    #[inline]
    fn mul(&self, g: usize, h: usize) -> usize {
        match self {
            Products::Table(t) => t.mul(g, h),
            Products::Direct(group) => group.mul(g, h),
        }
    }

    #[inline]
    fn inv(&self, g: usize) -> usize {
        match self {
            Products::Table(t) => t.inv(g),
            Products::Direct(group) => group.inv(g),
        }
    }

    fn commutator(&self, g: usize, h: usize) -> usize {
        let gh = self.mul(g, h);
        self.mul(self.mul(gh, self.inv(g)), self.inv(h))
    }
}

fn closure_size(order: usize, mul: impl Fn(usize, usize) -> usize, gens: &[usize]) -> usize {
    let mut seen = vec![false; order];
    seen[0] = true;
    let mut stack = vec![0usize];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = mul(x, g);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

impl FiniteGroup {
    fn from_permutations(
        name: String,
        elements: Vec<Permutation>,
        generators: Option<(usize, usize)>,
    ) -> FiniteGroup {
        assert!(elements[0].is_identity(), "element 0 must be the identity");
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        assert_eq!(index.len(), elements.len(), "duplicate group elements");
        let inverses = elements
            .iter()
            .map(|p| {
                *index
                    .get(&p.inverse())
                    .expect("element set is not closed under inverses")
            })
            .collect();
        FiniteGroup {
            name,
            order: elements.len(),
            structure: Structure::Permutations {
                elements,
                index,
                inverses,
            },
            generators,
        }
    }

    /// A tiny group given by an abstract product on `0..order` (0 = identity).
    fn from_table(
        name: String,
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        labels: Vec<String>,
        generators: Option<(usize, usize)>,
    ) -> FiniteGroup {
        let mut products = Vec::with_capacity(order * order);
        for g in 0..order {
            for h in 0..order {
                products.push(mul(g, h) as u32);
            }
        }
        let inverses = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| products[g * order + h] == 0)
                    .expect("every element has an inverse") as u32
            })
            .collect();
        FiniteGroup {
            name,
            order,
            structure: Structure::Table {
                products,
                inverses,
                labels,
            },
            generators,
        }
    }

    /// Closure of `gens` under composition, with the default cap.
    pub fn from_generators(gens: &[Permutation]) -> Result<FiniteGroup, GroupError> {
        Self::from_generators_capped(gens, DEFAULT_GROUP_CAP)
    }

    /// Enumerates `⟨gens⟩` breadth-first by right multiplication; elements are
    /// labeled by their cycle notation. With exactly two generators they become
    /// the distinguished pair.
    pub fn from_generators_capped(
        gens: &[Permutation],
        cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let first = gens.first().ok_or(GroupError::NoGenerators)?;
        let degree = first.degree();
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut seen: HashMap<Permutation, usize> = HashMap::new();
        seen.insert(elements[0].clone(), 0);
        let mut k = 0;
        while k < elements.len() {
            for g in gens {
                let e = elements[k].then(g);
                if !seen.contains_key(&e) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    seen.insert(e.clone(), elements.len());
                    elements.push(e);
                }
            }
            k += 1;
        }
        let generators = match gens {
            [a, b] => Some((seen[a], seen[b])),
            _ => None,
        };
        let name = format!(
            "<{}>",
            gens.iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        Ok(Self::from_permutations(name, elements, generators))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Text label of element `g`, e.g. `(1,4)(2,3)`, `(2,0)`, `-i` or `((1,2,3),0)`.
    pub fn label(&self, g: usize) -> String {
        match &self.structure {
            Structure::Permutations { elements, .. } => elements[g].to_string(),
            Structure::Table { labels, .. } => labels[g].clone(),
            Structure::Cyclic { .. } => g.to_string(),
            Structure::Metacyclic { n, .. } => format!("({},{})", g % n, g / n),
            Structure::Dicyclic { m } => match (g % m, g / m) {
                (0, 0) => "1".to_string(),
                (k, 0) => format!("x^{k}"),
                (0, _) => "y".to_string(),
                (k, _) => format!("x^{k}y"),
            },
            Structure::Product { right, .. } => {
                let r = right.order;
                format!(
                    "({},{})",
                    self.left_factor().label(g / r),
                    right.label(g % r)
                )
            }
            Structure::GeneralizedDihedral { base } => {
                format!("({},{})", base.label(g % base.order), g / base.order)
            }
        }
    }

    fn left_factor(&self) -> &FiniteGroup {
        match &self.structure {
            Structure::Product { left, .. } => left,
            _ => unreachable!(),
        }
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        (0..self.order).find(|&g| self.label(g) == label)
    }

    /// Index of a permutation in a group enumerated by closure.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        match &self.structure {
            Structure::Permutations { index, .. } => index.get(p).map(|&i| i as usize),
            _ => None,
        }
    }

    pub fn distinguished_generators(&self) -> Option<(usize, usize)> {
        self.generators
    }

    /// Replaces the distinguished pair after checking that it generates.
    pub fn with_generators(mut self, a: usize, b: usize) -> Result<FiniteGroup, GroupError> {
        if !self.generates(a, b)? {
            return Err(GroupError::NotGenerating);
        }
        self.generators = Some((a, b));
        Ok(self)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> FiniteGroup {
        self.name = name.into();
        self
    }

    fn check(&self, g: usize) -> Result<(), GroupError> {
        if g >= self.order {
            return Err(GroupError::IndexOutOfRange {
                index: g,
                order: self.order,
            });
        }
        Ok(())
    }

    /// Product `g·h`. Panics on out-of-range indices.
    pub fn mul(&self, g: usize, h: usize) -> usize {
        match &self.structure {
            Structure::Permutations {
                elements, index, ..
            } => index[&elements[g].then(&elements[h])] as usize,
            Structure::Table { products, .. } => products[g * self.order + h] as usize,
            Structure::Cyclic { n } => (g + h) % n,
            Structure::Metacyclic { n, k, powers } => {
                let (x, t) = (g % n, g / n);
                let (y, s) = (h % n, h / n);
                (x + powers[t] * y) % n + n * ((t + s) % k)
            }
            Structure::Dicyclic { m } => {
                let m = *m;
                let (k, e) = (g % m, g / m);
                let (l, f) = (h % m, h / m);
                match (e, f) {
                    (0, _) => (k + l) % m + m * f,
                    (_, 0) => (k + m - l) % m + m,
                    _ => (k + m - l + m / 2) % m,
                }
            }
            Structure::Product { left, right } => {
                let r = right.order;
                left.mul(g / r, h / r) * r + right.mul(g % r, h % r)
            }
            Structure::GeneralizedDihedral { base } => {
                let n = base.order;
                let (a, e) = (g % n, g / n);
                let (b, f) = (h % n, h / n);
                let b = if e == 1 { base.inv(b) } else { b };
                base.mul(a, b) + n * (e ^ f)
            }
        }
    }

    pub fn inv(&self, g: usize) -> usize {
        match &self.structure {
            Structure::Permutations { inverses, .. } | Structure::Table { inverses, .. } => {
                inverses[g] as usize
            }
            Structure::Cyclic { n } => (n - g) % n,
            Structure::Metacyclic { n, k, powers } => {
                let (x, t) = (g % n, g / n);
                let s = (k - t) % k;
                (n - powers[s] * x % n) % n + n * s
            }
            Structure::Dicyclic { m } => {
                let (k, e) = (g % m, g / m);
                if e == 0 {
                    (m - k) % m
                } else {
                    // (xᵏy)⁻¹ = xᵏ⁺ⁿy
                    (k + m / 2) % m + m
                }
            }
            Structure::Product { left, right } => {
                let r = right.order;
                left.inv(g / r) * r + right.inv(g % r)
            }
            Structure::GeneralizedDihedral { base } => {
                let n = base.order;
                if g < n {
                    base.inv(g)
                } else {
                    g
                }
            }
        }
    }

    pub fn element_order(&self, g: usize) -> Result<usize, GroupError> {
        self.check(g)?;
        if let Structure::Permutations { elements, .. } = &self.structure {
            return Ok(elements[g].order() as usize);
        }
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        Ok(k)
    }

    /// `g·h·g⁻¹·h⁻¹`.
    pub fn commutator_element(&self, g: usize, h: usize) -> Result<usize, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(self.mul(self.mul(g, h), self.inv(g)), self.inv(h)))
    }

    /// Whether `⟨g, h⟩` is the whole group.
    pub fn generates(&self, g: usize, h: usize) -> Result<bool, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(closure_size(self.order, |x, y| self.mul(x, y), &[g, h]) == self.order)
    }

    pub fn cayley_table(&self) -> CayleyTable {
        let n = self.order;
        let mut products = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                products.push(self.mul(g, h) as u32);
            }
        }
        CayleyTable {
            order: n,
            products,
            inverses: (0..n).map(|g| self.inv(g) as u32).collect(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|g| (g + 1..n).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Sorted list of `(element order, count)`.
    pub fn order_statistics(&self) -> Vec<(usize, usize)> {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for g in 0..self.order {
            *counts.entry(self.element_order(g).unwrap()).or_default() += 1;
        }
        let mut out: Vec<_> = counts.into_iter().collect();
        out.sort_unstable();
        out
    }
}

fn conjugacy_class_reps(products: &Products<'_>, n: usize) -> Vec<usize> {
    let mut rep = vec![usize::MAX; n];
    for x in 0..n {
        if rep[x] != usize::MAX {
            continue;
        }
        for y in 0..n {
            let c = products.mul(products.mul(products.inv(y), x), y);
            rep[c] = x;
        }
    }
    rep
}

fn check_cap(order: usize, cap: usize) -> Result<(), GroupError> {
    if order > cap {
        Err(GroupError::CapExceeded { cap })
    } else {
        Ok(())
    }
}

/// Wraps `name` in parentheses if it is itself a top-level product.
fn product_operand(name: &str) -> String {
    let mut depth = 0i32;
    for c in name.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => return format!("({name})"),
            _ => {}
        }
    }
    name.to_string()
}

/// The cyclic group `C_n`, element `k` being `k mod n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter(
            "cyclic group needs n >= 1".into(),
        ));
    }
    Ok(FiniteGroup {
        name: format!("C{n}"),
        order: n,
        structure: Structure::Cyclic { n },
        generators: Some((1 % n, 0)),
    })
}

fn metacyclic_impl(name: String, n: usize, k: usize, u: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || k == 0 {
        return Err(GroupError::InvalidParameter(
            "n and k must be positive".into(),
        ));
    }
    let u = u % n;
    let mut powers = vec![1 % n];
    for t in 1..=k {
        powers.push(powers[t - 1] * u % n);
    }
    if powers[k] != 1 % n {
        return Err(GroupError::InvalidParameter(format!(
            "{u}^{k} is not 1 modulo {n}"
        )));
    }
    powers.truncate(k);
    let generators = if k > 1 { (1 % n, n) } else { (1 % n, 0) };
    Ok(FiniteGroup {
        name,
        order: n * k,
        structure: Structure::Metacyclic { n, k, powers },
        generators: Some(generators),
    })
}

/// `C_n ⋊ C_k` where the generator of `C_k` acts by `x ↦ u·x (mod n)`;
/// requires `uᵏ ≡ 1 (mod n)`. Element `(x, t)` has index `x + n·t`.
pub fn metacyclic(n: usize, k: usize, u: usize) -> Result<FiniteGroup, GroupError> {
    metacyclic_impl(format!("M({n},{k},{u})"), n, k, u)
}

/// `C_n ⋊ C₂` with the involution acting by `x ↦ u·x`; requires `u² ≡ 1 (mod n)`.
/// Distinguished generators `(1,0)` and `(0,1)`.
pub fn semidirect_cyclic_c2(n: usize, u: usize) -> Result<FiniteGroup, GroupError> {
    metacyclic_impl(format!("SD({n},{u})"), n, 2, u)
}

/// The dihedral group of order `2n`, realized as `C_n ⋊ C₂` with inversion.
/// The distinguished generators are the reflections `τ₁ = (0,1)` and
/// `τ₂ = (1,1)`; `τ₁τ₂` is a rotation of order `n`.
pub fn dihedral_of_order(order: usize) -> Result<FiniteGroup, GroupError> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(GroupError::InvalidParameter(format!(
            "dihedral order must be even and at least 4, got {order}"
        )));
    }
    let n = order / 2;
    let mut g = metacyclic_impl(format!("D{order}"), n, 2, n - 1)?;
    g.generators = Some((n, n + 1));
    Ok(g)
}

/// The quaternion group `{±1, ±i, ±j, ±k}`; distinguished generators `i`, `j`.
pub fn quaternion8() -> FiniteGroup {
    // index -> (negative?, unit) with units 0 = 1, 1 = i, 2 = j, 3 = k
    const ENC: [(bool, usize); 8] = [
        (false, 0),
        (false, 1),
        (true, 0),
        (true, 1),
        (false, 2),
        (true, 2),
        (false, 3),
        (true, 3),
    ];
    const LABELS: [&str; 8] = ["1", "i", "-1", "-i", "j", "-j", "k", "-k"];
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mul = |x: usize, y: usize| {
        let (sx, ux) = ENC[x];
        let (sy, uy) = ENC[y];
        let (s, u) = UNIT[ux][uy];
        ENC.iter().position(|&e| e == (sx ^ sy ^ s, u)).unwrap()
    };
    FiniteGroup::from_table(
        "Q8".into(),
        8,
        mul,
        LABELS.iter().map(|s| s.to_string()).collect(),
        Some((1, 4)),
    )
}

/// The alternating group `A_n` on `n` points (`n ≤ 2` gives the trivial group).
/// For `n = 4` the distinguished pair is `(1,2,3)`, `(1,2)(3,4)`.
pub fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    alternating_capped(n, DEFAULT_GROUP_CAP)
}

pub fn alternating_capped(n: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter(
            "alternating group needs n >= 1".into(),
        ));
    }
    let g = if n < 3 {
        FiniteGroup::from_generators_capped(&[Permutation::identity(n)], cap)?
    } else {
        let three = parse_cycles("(1,2,3)", n).unwrap();
        let other = if n == 4 {
            parse_cycles("(1,2)(3,4)", 4).unwrap()
        } else if n % 2 == 1 {
            let cycle: Vec<usize> = (1..=n).collect();
            Permutation::from_cycles(n, &[&cycle]).unwrap()
        } else {
            let cycle: Vec<usize> = (2..=n).collect();
            Permutation::from_cycles(n, &[&cycle]).unwrap()
        };
        FiniteGroup::from_generators_capped(&[three, other], cap)?
    };
    Ok(g.renamed(format!("A{n}")))
}

/// `G × H` with element `(g, h)` at index `g·|H| + h`, labeled `(g,h)`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    direct_product_capped(g, h, DEFAULT_GROUP_CAP)
}

pub fn direct_product_capped(
    g: &FiniteGroup,
    h: &FiniteGroup,
    cap: usize,
) -> Result<FiniteGroup, GroupError> {
    let order = g
        .order
        .checked_mul(h.order)
        .ok_or(GroupError::CapExceeded { cap })?;
    check_cap(order, cap)?;
    Ok(FiniteGroup {
        name: format!("{}x{}", g.name, product_operand(&h.name)),
        order,
        structure: Structure::Product {
            left: Box::new(g.clone()),
            right: Box::new(h.clone()),
        },
        generators: None,
    })
}

/// The dicyclic group of order `4n`:
/// `⟨x, y | x²ⁿ = 1, y² = xⁿ, y⁻¹xy = x⁻¹⟩`, element `xᵏyᵉ` at index `k + 2n·e`.
pub fn dicyclic(order: usize) -> Result<FiniteGroup, GroupError> {
    if order < 4 || !order.is_multiple_of(4) {
        return Err(GroupError::InvalidParameter(format!(
            "dicyclic order must be a positive multiple of 4, got {order}"
        )));
    }
    let m = order / 2;
    Ok(FiniteGroup {
        name: format!("Dic{order}"),
        order,
        structure: Structure::Dicyclic { m },
        generators: Some((1 % m, m)),
    })
}

/// `A ⋊ C₂` with the involution acting by inversion on the abelian group `A`.
pub fn generalized_dihedral(a: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    generalized_dihedral_capped(a, DEFAULT_GROUP_CAP)
}

pub fn generalized_dihedral_capped(a: &FiniteGroup, cap: usize) -> Result<FiniteGroup, GroupError> {
    check_cap(2 * a.order, cap)?;
    if !a.is_abelian() {
        return Err(GroupError::NotAbelian(a.name.clone()));
    }
    Ok(FiniteGroup {
        name: format!("Dih({})", a.name),
        order: 2 * a.order,
        structure: Structure::GeneralizedDihedral {
            base: Box::new(a.clone()),
        },
        generators: None,
    })
}

/// Evidence that a group is tH: a generating pair whose commutator has order 2.
#[derive(Debug, Clone)]
pub struct ThWitness {
    group: FiniteGroup,
    a: usize,
    b: usize,
    commutator_order: usize,
}

impl ThWitness {
    /// Validates both witness invariants from scratch.
    pub fn new(group: FiniteGroup, a: usize, b: usize) -> Result<ThWitness, GroupError> {
        if !group.generates(a, b)? {
            return Err(GroupError::NotGenerating);
        }
        let c = group.commutator_element(a, b)?;
        let order = group.element_order(c)?;
        if order != 2 {
            return Err(GroupError::CommutatorOrder { order });
        }
        Ok(ThWitness {
            group,
            a,
            b,
            commutator_order: order,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn commutator_order(&self) -> usize {
        self.commutator_order
    }

    pub fn commutator(&self) -> usize {
        self.group.commutator_element(self.a, self.b).unwrap()
    }

    pub fn revalidate(&self) -> Result<(), GroupError> {
        ThWitness::new(self.group.clone(), self.a, self.b).map(|_| ())
    }
}

/// Exhaustive search for a tH witness.
///
/// `a` ranges over non-central conjugacy-class representatives in index order
/// and `b` over all elements not commuting with `a`; the first pair with a
/// commutator of order 2 that generates the group is returned. Absence is a
/// proof that the group is not tH.
pub fn th_witness_search(group: &FiniteGroup) -> Option<ThWitness> {
    let n = group.order();
    let products = Products::new(group);
    let reps = conjugacy_class_reps(&products, n);
    let candidates: Vec<usize> = (0..n)
        .filter(|&a| reps[a] == a)
        .filter(|&a| (0..n).any(|y| products.mul(a, y) != products.mul(y, a)))
        .collect();
    let search = |a: usize| -> Option<(usize, usize)> {
        (0..n).find_map(|b| {
            if products.mul(a, b) == products.mul(b, a) {
                return None;
            }
            let c = products.commutator(a, b);
            if products.mul(c, c) != 0 {
                return None;
            }
            (closure_size(n, |x, y| products.mul(x, y), &[a, b]) == n).then_some((a, b))
        })
    };
    #[cfg(feature = "parallel")]
    let found = {
        use rayon::prelude::*;
        candidates.par_iter().find_map_first(|&a| search(a))
    };
    #[cfg(not(feature = "parallel"))]
    let found = candidates.iter().find_map(|&a| search(a));
    found.map(|(a, b)| ThWitness::new(group.clone(), a, b).expect("search result is a witness"))
}

/// Right regular representation on the distinguished generators.
pub fn regular_representation(
    group: &FiniteGroup,
) -> Result<(Permutation, Permutation), GroupError> {
    let (a, b) = group
        .distinguished_generators()
        .ok_or_else(|| GroupError::MissingGenerators(group.name.clone()))?;
    regular_pair(group, a, b)
}

/// Permutations of `{1, …, |G|}` sending point `i + 1` to `(elementᵢ·a) + 1` resp. `·b`.
pub fn regular_pair(
    group: &FiniteGroup,
    a: usize,
    b: usize,
) -> Result<(Permutation, Permutation), GroupError> {
    group.check(a)?;
    group.check(b)?;
    let right = |h: usize| {
        Permutation::from_images((0..group.order()).map(|x| group.mul(x, h) as u32).collect())
            .expect("right multiplication is a bijection")
    };
    Ok((right(a), right(b)))
}

/// Orders for which [`catalogue`] is available.
pub const CATALOGUE_ORDERS: [usize; 13] = [2, 4, 6, 10, 14, 18, 20, 22, 26, 28, 30, 44, 52];

/// One representative per isomorphism class of groups of order `n`, for the
/// orders in [`CATALOGUE_ORDERS`]. The lists follow the standard small-group
/// classification.
pub fn catalogue(n: usize) -> Result<Vec<FiniteGroup>, GroupError> {
    let c = |k| cyclic(k).unwrap();
    let prod = |x: FiniteGroup, y: FiniteGroup| direct_product(&x, &y).unwrap();
    let d = |k| dihedral_of_order(k).unwrap();
    let groups = match n {
        2 => vec![c(2)],
        4 => vec![c(4), prod(c(2), c(2))],
        6 | 10 | 14 | 22 | 26 => vec![c(n), d(n)],
        18 => vec![
            c(18),
            prod(c(3), c(6)),
            d(18),
            prod(d(6), c(3)),
            generalized_dihedral(&prod(c(3), c(3)))?,
        ],
        20 => vec![
            c(20),
            prod(c(2), c(10)),
            d(20),
            dicyclic(20)?,
            metacyclic(5, 4, 2)?,
        ],
        28 | 44 => vec![c(n), prod(c(2), c(n / 2)), d(n), dicyclic(n)?],
        30 => vec![c(30), d(30), prod(d(6), c(5)), prod(d(10), c(3))],
        52 => vec![
            c(52),
            prod(c(2), c(26)),
            d(52),
            dicyclic(52)?,
            metacyclic(13, 4, 5)?,
        ],
        _ => return Err(GroupError::UnsupportedOrder(n)),
    };
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(g: &FiniteGroup) {
        let t = g.cayley_table();
        let n = g.order();
        for x in 0..n {
            assert_eq!(t.mul(0, x), x);
            assert_eq!(t.mul(x, 0), x);
            assert_eq!(t.mul(x, t.inv(x)), 0);
            assert_eq!(t.mul(t.inv(x), x), 0);
        }
        if n <= 200 {
            for x in 0..n {
                for y in 0..n {
                    let xy = t.mul(x, y);
                    for z in 0..n {
                        assert_eq!(t.mul(xy, z), t.mul(x, t.mul(y, z)));
                    }
                }
            }
        }
        if let Some((a, b)) = g.distinguished_generators() {
            assert!(g.generates(a, b).unwrap(), "{} generators", g.name());
        }
    }

    #[test]
    fn closure_from_generators() {
        let g = FiniteGroup::from_generators(&[parse_cycles("(1,2,3)", 3).unwrap()]).unwrap();
        assert_eq!(g.order(), 3);
        let a4 = FiniteGroup::from_generators(&[
            parse_cycles("(1,2,3)", 4).unwrap(),
            parse_cycles("(1,2)(3,4)", 4).unwrap(),
        ])
        .unwrap();
        assert_eq!(a4.order(), 12);
        let trivial = FiniteGroup::from_generators(&[Permutation::identity(3)]).unwrap();
        assert_eq!(trivial.order(), 1);
        let big = FiniteGroup::from_generators_capped(
            &[
                parse_cycles("(1,2)", 6).unwrap(),
                parse_cycles("(1,2,3,4,5,6)", 6).unwrap(),
            ],
            100,
        );
        assert_eq!(big.unwrap_err(), GroupError::CapExceeded { cap: 100 });
        assert_eq!(
            FiniteGroup::from_generators(&[Permutation::identity(2), Permutation::identity(3)])
                .unwrap_err(),
            GroupError::DegreeMismatch
        );
    }

    #[test]
    fn named_constructors() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let q = quaternion8();
        assert_eq!(q.order(), 8);
        assert_eq!(q.order_statistics(), vec![(1, 1), (2, 1), (4, 6)]);
        let d8 = dihedral_of_order(8).unwrap();
        let (t1, t2) = d8.distinguished_generators().unwrap();
        assert_eq!(d8.element_order(t1).unwrap(), 2);
        assert_eq!(d8.element_order(t2).unwrap(), 2);
        assert_eq!(d8.element_order(d8.mul(t1, t2)).unwrap(), 4);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert!(cyclic(0).is_err());
        assert!(dihedral_of_order(2).is_err());
        assert!(dihedral_of_order(7).is_err());
        for g in [
            cyclic(7).unwrap(),
            q,
            d8,
            dihedral_of_order(4).unwrap(),
            dihedral_of_order(10).unwrap(),
            alternating(4).unwrap(),
            dicyclic(12).unwrap(),
            metacyclic(5, 4, 2).unwrap(),
        ] {
            check_axioms(&g);
        }
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion8();
        let i = q.find_label("i").unwrap();
        let j = q.find_label("j").unwrap();
        let k = q.find_label("k").unwrap();
        let minus_one = q.find_label("-1").unwrap();
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.mul(j, i), q.find_label("-k").unwrap());
        assert_eq!(q.commutator_element(i, j).unwrap(), minus_one);
    }

    #[test]
    fn products() {
        let klein = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(klein.order_statistics(), vec![(1, 1), (2, 3)]);
        let a4c3 = direct_product(&alternating(4).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(a4c3.order(), 36);
        assert_eq!(a4c3.name(), "A4xC3");
        check_axioms(&a4c3);
        // trivial factor: index map is the identity and products agree
        let q = quaternion8();
        let tq = direct_product(&cyclic(1).unwrap(), &q).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(tq.mul(x, y), q.mul(x, y));
            }
        }
        assert!(direct_product_capped(&q, &q, 63).is_err());
        // projections are homomorphisms
        let g = alternating(4).unwrap();
        let h = cyclic(3).unwrap();
        for x in 0..36 {
            for y in 0..36 {
                let xy = a4c3.mul(x, y);
                assert_eq!(xy / 3, g.mul(x / 3, y / 3));
                assert_eq!(xy % 3, h.mul(x % 3, y % 3));
            }
        }
    }

    #[test]
    fn semidirect_products() {
        let g = semidirect_cyclic_c2(4, 3).unwrap();
        assert_eq!(g.order(), 8);
        check_axioms(&g);
        let (x, y) = g.distinguished_generators().unwrap();
        let c = g.commutator_element(x, y).unwrap();
        assert_eq!(g.label(c), "(2,0)");
        assert_eq!(g.element_order(c).unwrap(), 2);

        let g = semidirect_cyclic_c2(8, 5).unwrap();
        assert_eq!(g.order(), 16);
        let (x, y) = g.distinguished_generators().unwrap();
        let c = g.commutator_element(x, y).unwrap();
        assert_eq!(g.label(c), "(4,0)");
        assert_eq!(g.element_order(c).unwrap(), 2);

        let g = semidirect_cyclic_c2(6, 1).unwrap();
        assert!(g.is_abelian());
        let (x, y) = g.distinguished_generators().unwrap();
        assert_eq!(g.commutator_element(x, y).unwrap(), 0);

        assert!(semidirect_cyclic_c2(8, 3).is_ok());
        assert!(semidirect_cyclic_c2(8, 2).is_err());
    }

    #[test]
    fn metacyclic_product_formula() {
        for (n, k, u) in [
            (4usize, 2usize, 3usize),
            (8, 2, 5),
            (5, 4, 2),
            (13, 4, 5),
            (7, 3, 2),
        ] {
            let g = metacyclic(n, k, u).unwrap();
            let pow = |e: usize| (0..e).fold(1 % n, |acc, _| acc * u % n);
            for i in 0..n * k {
                for j in 0..n * k {
                    let (x, t) = (i % n, i / n);
                    let (x2, t2) = (j % n, j / n);
                    let expect = (x + pow(t) * x2) % n + n * ((t + t2) % k);
                    assert_eq!(g.mul(i, j), expect, "M({n},{k},{u})");
                }
            }
        }
    }

    #[test]
    fn dicyclic_structure() {
        for order in [8usize, 12, 20, 28] {
            let g = dicyclic(order).unwrap();
            check_axioms(&g);
            // unique involution
            let involutions = g
                .order_statistics()
                .into_iter()
                .find(|&(o, _)| o == 2)
                .map(|(_, c)| c);
            assert_eq!(involutions, Some(1), "Dic{order}");
        }
        let dic8 = dicyclic(8).unwrap();
        assert_eq!(dic8.order_statistics(), quaternion8().order_statistics());
    }

    #[test]
    fn element_queries() {
        let a4 = alternating(4).unwrap();
        assert_eq!(a4.element_order(0).unwrap(), 1);
        let x = a4.index_of(&parse_cycles("(1,2,3)", 4).unwrap()).unwrap();
        let y = a4
            .index_of(&parse_cycles("(1,2)(3,4)", 4).unwrap())
            .unwrap();
        assert!(a4.generates(x, y).unwrap());
        let c = a4.commutator_element(x, y).unwrap();
        assert_eq!(a4.label(c), "(1,4)(2,3)");
        assert_eq!(a4.element_order(c).unwrap(), 2);
        assert!(matches!(
            a4.element_order(12),
            Err(GroupError::IndexOutOfRange {
                index: 12,
                order: 12
            })
        ));
    }

    #[test]
    fn witness_search() {
        assert!(th_witness_search(&cyclic(12).unwrap()).is_none());
        let w = th_witness_search(&quaternion8()).unwrap();
        assert_eq!(w.commutator_order(), 2);
        w.revalidate().unwrap();
        // D12 has commutator subgroup of order 3: no witness
        assert!(th_witness_search(&dihedral_of_order(12).unwrap()).is_none());
        let w = th_witness_search(&dihedral_of_order(8).unwrap()).unwrap();
        w.revalidate().unwrap();
        let w = th_witness_search(&alternating(4).unwrap()).unwrap();
        assert_eq!(w.group().order(), 12);
    }

    #[test]
    fn witness_validation_rejects_bad_pairs() {
        let q = quaternion8();
        assert_eq!(
            ThWitness::new(q.clone(), 1, 2).unwrap_err(),
            GroupError::NotGenerating
        );
        let d = dihedral_of_order(12).unwrap();
        let (a, b) = d.distinguished_generators().unwrap();
        assert_eq!(
            ThWitness::new(d, a, b).unwrap_err(),
            GroupError::CommutatorOrder { order: 3 }
        );
    }

    #[test]
    fn regular_representations() {
        let (a, b) = regular_representation(&cyclic(1).unwrap()).unwrap();
        assert!(a.is_identity() && b.is_identity());
        let g = semidirect_cyclic_c2(4, 3).unwrap();
        let (a, b) = regular_representation(&g).unwrap();
        assert!(crate::perm::is_transitive(&[a.clone(), b.clone()], 8).unwrap());
        for h in 1..g.order() {
            let (p, _) = regular_pair(&g, h, 0).unwrap();
            assert_eq!(p.fixed_points(), 0);
        }
        let bare = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(matches!(
            regular_representation(&bare),
            Err(GroupError::MissingGenerators(_))
        ));
    }

    #[test]
    fn catalogue_counts_and_distinctness() {
        let expected = [
            (2, 1),
            (4, 2),
            (6, 2),
            (10, 2),
            (14, 2),
            (18, 5),
            (20, 5),
            (22, 2),
            (26, 2),
            (28, 4),
            (30, 4),
            (44, 4),
            (52, 5),
        ];
        for (n, count) in expected {
            let groups = catalogue(n).unwrap();
            assert_eq!(groups.len(), count, "order {n}");
            let mut signatures = Vec::new();
            for g in &groups {
                assert_eq!(g.order(), n, "{}", g.name());
                check_axioms(g);
                signatures.push((g.is_abelian(), g.order_statistics()));
            }
            let before = signatures.len();
            signatures.sort();
            signatures.dedup();
            assert_eq!(
                signatures.len(),
                before,
                "isomorphic duplicates at order {n}"
            );
        }
        assert_eq!(catalogue(8).unwrap_err(), GroupError::UnsupportedOrder(8));
        let names: Vec<String> = catalogue(20)
            .unwrap()
            .iter()
            .map(|g| g.name().to_string())
            .collect();
        assert_eq!(names, ["C20", "C2xC10", "D20", "Dic20", "M(5,4,2)"]);
    }
}
