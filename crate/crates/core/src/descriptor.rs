//! Group descriptor strings.
//!
//! ```text
//! desc   := factor ("x" factor)*            direct product, left-associative
//! factor := "C" n                           cyclic of order n
//!         | "D" n                           dihedral of order n
//!         | "Dic" n                         dicyclic of order n
//!         | "Q8"                            quaternion group
//!         | "A" n                           alternating group on n points
//!         | "SD(" n "," u ")"               C_n ⋊ C_2, x ↦ u·x
//!         | "M(" n "," k "," u ")"          C_n ⋊ C_k, x ↦ u·x
//!         | "Dih(" desc ")"                 generalized dihedral of an abelian group
//!         | "(" desc ")"
//! ```
//!
//! Names produced by the constructors in [`crate::group`] parse back to the
//! same group, so a group's name doubles as its descriptor.

use thiserror::Error;

use crate::group::{
    alternating_capped, cyclic, dicyclic, dihedral_of_order, direct_product_capped,
    generalized_dihedral_capped, metacyclic, quaternion8, semidirect_cyclic_c2, FiniteGroup,
    GroupError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescriptorError {
    #[error("bad group descriptor at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Builds the group named by `text`, refusing orders above `cap`.
pub fn parse_group(text: &str, cap: usize) -> Result<FiniteGroup, DescriptorError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        cap,
    };
    let g = p.desc()?;
    if p.pos != p.text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(g)
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    cap: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> DescriptorError {
        DescriptorError::Syntax {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.text[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), DescriptorError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn int(&mut self) -> Result<usize, DescriptorError> {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number too large"))
    }

    fn capped(&self, n: usize) -> Result<(), DescriptorError> {
        if n > self.cap {
            Err(GroupError::CapExceeded { cap: self.cap }.into())
        } else {
            Ok(())
        }
    }

    fn desc(&mut self) -> Result<FiniteGroup, DescriptorError> {
        let mut g = self.factor()?;
        while self.eat("x") {
            let h = self.factor()?;
            g = direct_product_capped(&g, &h, self.cap)?;
        }
        Ok(g)
    }

    fn factor(&mut self) -> Result<FiniteGroup, DescriptorError> {
        if self.eat("(") {
            let g = self.desc()?;
            self.expect(")")?;
            return Ok(g);
        }
        if self.eat("Dih(") {
            let base = self.desc()?;
            self.expect(")")?;
            return Ok(generalized_dihedral_capped(&base, self.cap)?);
        }
        if self.eat("Dic") {
            let n = self.int()?;
            self.capped(n)?;
            return Ok(dicyclic(n)?);
        }
        if self.eat("SD(") {
            let n = self.int()?;
            self.expect(",")?;
            let u = self.int()?;
            self.expect(")")?;
            self.capped(n.saturating_mul(2))?;
            return Ok(semidirect_cyclic_c2(n, u)?);
        }
        if self.eat("M(") {
            let n = self.int()?;
            self.expect(",")?;
            let k = self.int()?;
            self.expect(",")?;
            let u = self.int()?;
            self.expect(")")?;
            self.capped(n.saturating_mul(k))?;
            return Ok(metacyclic(n, k, u)?);
        }
        if self.eat("Q8") {
            return Ok(quaternion8());
        }
        if self.eat("C") {
            let n = self.int()?;
            self.capped(n)?;
            return Ok(cyclic(n)?);
        }
        if self.eat("D") {
            let n = self.int()?;
            self.capped(n)?;
            return Ok(dihedral_of_order(n)?);
        }
        if self.eat("A") {
            let n = self.int()?;
            return Ok(alternating_capped(n, self.cap)?);
        }
        Err(self.error("expected a group"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalogue, CATALOGUE_ORDERS, DEFAULT_GROUP_CAP};

    fn parse(text: &str) -> FiniteGroup {
        parse_group(text, DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn simple_descriptors() {
        assert_eq!(parse("C12").order(), 12);
        assert_eq!(parse("D8").order(), 8);
        assert_eq!(parse("Q8").order(), 8);
        assert_eq!(parse("A4").order(), 12);
        assert_eq!(parse("SD(4,3)").order(), 8);
        assert_eq!(parse("A4xC9").order(), 108);
        assert_eq!(parse("A4xC9").name(), "A4xC9");
        assert_eq!(parse("Dih(C3xC3)").order(), 18);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_group("B4", 100),
            Err(DescriptorError::Syntax { column: 1, .. })
        ));
        assert!(matches!(
            parse_group("C4y", 100),
            Err(DescriptorError::Syntax { column: 3, .. })
        ));
        assert!(matches!(
            parse_group("C400", 100),
            Err(DescriptorError::Group(GroupError::CapExceeded { cap: 100 }))
        ));
        assert!(matches!(
            parse_group("C20xC20", 100),
            Err(DescriptorError::Group(GroupError::CapExceeded { cap: 100 }))
        ));
        assert!(parse_group("SD(8,3", 100).is_err());
        assert!(parse_group("SD(8,2)", 100).is_err());
    }

    #[test]
    fn names_round_trip() {
        for n in CATALOGUE_ORDERS {
            for g in catalogue(n).unwrap() {
                let h = parse(g.name());
                assert_eq!(h.name(), g.name());
                assert_eq!(h.order(), g.order());
                for x in 0..g.order() {
                    assert_eq!(h.label(x), g.label(x));
                    for y in 0..g.order() {
                        assert_eq!(h.mul(x, y), g.mul(x, y));
                    }
                }
            }
        }
        let nested = parse("C2x(C3xC5)");
        assert_eq!(nested.name(), "C2x(C3xC5)");
        assert_eq!(parse(nested.name()).order(), 30);
    }
}
