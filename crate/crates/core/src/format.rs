//! Plain-text file formats for origamis and Hurwitz certificates.
//!
//! Origami file:
//!
//! ```text
//! d = 8
//! a = (1,2,3,4)(5,6,7,8)
//! b = (1,8,3,6)(2,7,4,5)
//! ```
//!
//! Lines starting with `#` and blank lines are skipped. A certificate is six
//! `key = value` lines (`genus`, `order`, `group`, `a`, `b`, `commutator`,
//! with group elements written as labels) followed by an origami block.

use serde::Serialize;
use thiserror::Error;

use crate::descriptor::parse_group;
use crate::group::{regular_pair, FiniteGroup};
use crate::hurwitz::{HtsCertificate, Limits};
use crate::origami::Origami;
use crate::perm::{format_cycles, parse_cycles, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Origami {
        line: usize,
        source: crate::origami::OrigamiError,
    },
}

/// Serializes an origami; the output parses back to the same pair.
pub fn write_origami(o: &Origami) -> String {
    format!(
        "d = {}\na = {}\nb = {}\n",
        o.degree(),
        format_cycles(o.sigma_a()),
        format_cycles(o.sigma_b())
    )
}

pub fn parse_origami(text: &str) -> Result<Origami, FormatError> {
    let mut lines = Lines::new(text);
    let o = lines.origami()?;
    lines.finish()?;
    Ok(o)
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let lines = text
            .split('\n')
            .enumerate()
            .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
            .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
            .collect();
        Lines { lines, next: 0 }
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |&(n, _)| n)
    }

    /// The value of the next line, which must read `key = value`.
    /// Returns the line number, the value and its 1-based starting column.
    fn field(&mut self, key: &str) -> Result<(usize, &'a str, usize), FormatError> {
        let Some(&(line, text)) = self.lines.get(self.next) else {
            return Err(FormatError::Parse {
                line: self.last_line(),
                column: 1,
                message: format!("missing '{key} =' line"),
            });
        };
        self.next += 1;
        let prefix = format!("{key} = ");
        match text.strip_prefix(&prefix) {
            Some(value) => Ok((line, value, prefix.len() + 1)),
            None => Err(FormatError::Parse {
                line,
                column: 1,
                message: format!("expected '{prefix}'"),
            }),
        }
    }

    fn int(&mut self, key: &str) -> Result<(usize, usize), FormatError> {
        let (line, value, column) = self.field(key)?;
        let ok = !value.is_empty()
            && value.bytes().all(|c| c.is_ascii_digit())
            && !(value.len() > 1 && value.starts_with('0'));
        match value.parse() {
            Ok(n) if ok => Ok((line, n)),
            _ => Err(FormatError::Parse {
                line,
                column,
                message: format!("'{key}' must be a non-negative integer"),
            }),
        }
    }

    fn perm(&mut self, key: &str, degree: usize) -> Result<Permutation, FormatError> {
        let (line, value, column) = self.field(key)?;
        parse_cycles(value, degree).map_err(|e| {
            let (offset, message) = match e {
                PermError::Syntax { column, message } => (column - 1, message),
                other => (0, other.to_string()),
            };
            FormatError::Parse {
                line,
                column: column + offset,
                message,
            }
        })
    }

    fn origami(&mut self) -> Result<Origami, FormatError> {
        let (line, d) = self.int("d")?;
        if d == 0 {
            return Err(FormatError::Parse {
                line,
                column: 5,
                message: "degree must be positive".into(),
            });
        }
        let a = self.perm("a", d)?;
        let b = self.perm("b", d)?;
        let b_line = self.lines[self.next - 1].0;
        Origami::new(a, b).map_err(|source| FormatError::Origami {
            line: b_line,
            source,
        })
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.lines.get(self.next) {
            Some(&(line, _)) => Err(FormatError::Parse {
                line,
                column: 1,
                message: "unexpected trailing content".into(),
            }),
            None => Ok(()),
        }
    }
}

/// Serializes a certificate so that [`verify_certificate`] can re-check it.
pub fn write_certificate(cert: &HtsCertificate) -> String {
    let w = cert.witness();
    let g = w.group();
    format!(
        "# Hurwitz translation surface: the regular representation of a group\n\
         # generated by a, b whose commutator has order 2\n\
         genus = {}\norder = {}\ngroup = {}\na = {}\nb = {}\ncommutator = {}\n\
         # origami\n{}",
        cert.genus(),
        g.order(),
        g.name(),
        g.label(w.a()),
        g.label(w.b()),
        g.label(w.commutator()),
        write_origami(cert.origami())
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("check failed: {0}")]
    Check(String),
}

/// What a successful certificate check established.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub genus: usize,
    pub order: usize,
    pub group: String,
    pub commutator: String,
    /// Translation count, when the origami was small enough to analyze.
    pub translations: Option<usize>,
    pub hurwitz: Option<bool>,
}

/// Parses a certificate and re-checks it from scratch; the first failing
/// check is named in the error.
pub fn verify_certificate(
    text: &str,
    limits: Limits,
) -> Result<CertificateReport, CertificateError> {
    let fail = |m: String| Err(CertificateError::Check(m));
    let mut lines = Lines::new(text);
    let (_, genus) = lines.int("genus")?;
    let (_, order) = lines.int("order")?;
    let (group_line, descriptor, column) = lines.field("group")?;
    let group = parse_group(descriptor, limits.group_cap).map_err(|e| FormatError::Parse {
        line: group_line,
        column,
        message: e.to_string(),
    })?;
    let element = |lines: &mut Lines, key: &str, g: &FiniteGroup| {
        let (line, label, column) = lines.field(key)?;
        g.find_label(label).ok_or_else(|| {
            CertificateError::Format(FormatError::Parse {
                line,
                column,
                message: format!("unknown element '{label}' of {}", g.name()),
            })
        })
    };
    let a = element(&mut lines, "a", &group)?;
    let b = element(&mut lines, "b", &group)?;
    let (_, claimed, _) = lines.field("commutator")?;
    let claimed = claimed.to_string();
    let origami = lines.origami()?;
    lines.finish()?;

    if group.order() != order {
        return fail(format!(
            "group order: {} has order {}, certificate says {order}",
            group.name(),
            group.order()
        ));
    }
    if !group.generates(a, b).expect("indices checked") {
        return fail("generation: a and b do not generate the group".into());
    }
    let c = group.commutator_element(a, b).expect("indices checked");
    let c_order = group.element_order(c).expect("index checked");
    if group.label(c) != claimed {
        return fail(format!(
            "commutator order: [a,b] = {} (order {c_order}), certificate says {claimed}",
            group.label(c)
        ));
    }
    if c_order != 2 {
        return fail(format!(
            "commutator order: [a,b] = {claimed} has order {c_order}, not 2"
        ));
    }
    if genus < 2 || order != 4 * genus - 4 {
        return fail(format!(
            "genus: order {order} is not 4g - 4 for g = {genus}"
        ));
    }
    let (ra, rb) = regular_pair(&group, a, b).expect("indices checked");
    if origami.sigma_a() != &ra || origami.sigma_b() != &rb {
        return fail("origami: not the regular representation of (a, b)".into());
    }
    let sing = origami.singularity_data();
    if sing.genus != genus || !sing.is_principal() {
        return fail(format!(
            "origami: genus {} in {}, expected genus {genus} in H(1,...,1)",
            sing.genus,
            sing.stratum_label()
        ));
    }
    let (translations, hurwitz) = if origami.degree() <= limits.analysis_budget {
        let t = origami.translation_group().len();
        if t != 4 * genus - 4 {
            return fail(format!("translations: {t}, expected {}", 4 * genus - 4));
        }
        let h = origami.is_hurwitz();
        if !h {
            return fail("hurwitz: origami is not Hurwitz".into());
        }
        (Some(t), Some(h))
    } else {
        (None, None)
    };
    Ok(CertificateReport {
        genus,
        order,
        group: group.name().to_string(),
        commutator: claimed,
        translations,
        hurwitz,
    })
}
