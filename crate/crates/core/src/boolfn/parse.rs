//! Function-spec grammar:
//!
//! ```text
//! function := term ( '^' term )*
//! term     := factor ( '*'? factor )*
//! factor   := 'x' digits | '1' | '0'
//! ```
//!
//! e.g. `x0x1 ^ x2 ^ 1` or `x0*x3 ^ x1`. A term containing `0` vanishes.

use super::{AnfFunction, AnfTerm, MAX_ANF_ARITY};
use crate::{Error, Result};

/// Parses a function spec. With `arity = None` the arity is one more than
/// the largest variable index mentioned (at least 1).
pub fn parse_anf(src: &str, arity: Option<usize>) -> Result<AnfFunction> {
    let mut p = Parser {
        chars: src.char_indices().peekable(),
        src,
    };
    let mut terms: Vec<(Option<u32>, usize)> = Vec::new();
    let mut max_var: Option<(usize, usize)> = None;

    loop {
        let (term, column) = p.term(&mut max_var)?;
        terms.push((term, column));
        p.skip_ws();
        match p.chars.next() {
            None => break,
            Some((_, '^')) => continue,
            Some((pos, c)) => {
                return Err(Error::parse(pos + 1, format!("expected `^`, found `{c}`")));
            }
        }
    }

    let needed = max_var.map_or(1, |(v, _)| v + 1);
    let arity = match arity {
        Some(n) => {
            if let Some((v, column)) = max_var.filter(|(v, _)| *v >= n) {
                return Err(Error::parse(
                    column,
                    format!("variable x{v} out of range for {n} variables"),
                ));
            }
            n
        }
        None => needed,
    };

    let mut f = AnfFunction::zero(arity)?;
    for (term, _) in terms {
        if let Some(mask) = term {
            f.toggle(AnfTerm::from_mask(mask))?;
        }
    }
    Ok(f)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn end_column(&self) -> usize {
        self.src.len() + 1
    }

    /// Returns the term mask, or `None` when a `0` factor annihilated it.
    fn term(&mut self, max_var: &mut Option<(usize, usize)>) -> Result<(Option<u32>, usize)> {
        self.skip_ws();
        let end = self.end_column();
        let start = self.chars.peek().map_or(end, |(p, _)| p + 1);
        let mut mask = Some(0u32);
        let mut factors = 0;
        loop {
            self.skip_ws();
            match self.chars.peek().copied() {
                Some((pos, 'x' | 'X')) => {
                    self.chars.next();
                    let v = self.index(pos + 1)?;
                    if max_var.is_none_or(|(m, _)| v > m) {
                        *max_var = Some((v, pos + 1));
                    }
                    mask = mask.map(|m| m | (1 << v));
                }
                Some((_, '1')) => {
                    self.chars.next();
                }
                Some((_, '0')) => {
                    self.chars.next();
                    mask = None;
                }
                Some((pos, '*')) if factors > 0 => {
                    self.chars.next();
                    self.skip_ws();
                    if !matches!(self.chars.peek(), Some((_, 'x' | 'X' | '0' | '1'))) {
                        return Err(Error::parse(pos + 2, "expected a factor after `*`"));
                    }
                    continue;
                }
                Some((pos, c)) if factors == 0 => {
                    return Err(Error::parse(
                        pos + 1,
                        format!("expected a term, found `{c}`"),
                    ));
                }
                None if factors == 0 => {
                    return Err(Error::parse(self.end_column(), "expected a term"));
                }
                _ => break,
            }
            factors += 1;
        }
        Ok((mask, start))
    }

    fn index(&mut self, column: usize) -> Result<usize> {
        let mut digits = String::new();
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            digits.push(c);
        }
        if digits.is_empty() {
            return Err(Error::parse(
                column + 1,
                "expected a variable index after `x`",
            ));
        }
        match digits.parse::<usize>() {
            Ok(v) if v < MAX_ANF_ARITY => Ok(v),
            _ => Err(Error::parse(
                column,
                format!("variable index {digits} exceeds the {MAX_ANF_ARITY}-variable limit"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(f: &AnfFunction) -> Vec<u32> {
        f.terms().map(AnfTerm::mask).collect()
    }

    #[test]
    fn juxtaposition_and_star() {
        let f = parse_anf("x0x1 ^ x2 ^ 1", None).unwrap();
        assert_eq!(f.arity(), 3);
        assert_eq!(terms(&f), [0, 0b011, 0b100]);
        assert_eq!(parse_anf("x0*x1^x2^1", None).unwrap(), f);
        assert_eq!(parse_anf("X0 X1 ^ x2 ^ 1", None).unwrap(), f);
    }

    #[test]
    fn repeated_terms_cancel() {
        assert!(parse_anf("x0x1 ^ x1x0", Some(2)).unwrap().is_zero());
        assert!(parse_anf("x0 ^ 0", Some(2)).unwrap() == parse_anf("x0", Some(2)).unwrap());
        assert!(parse_anf("0", Some(2)).unwrap().is_zero());
    }

    #[test]
    fn explicit_arity() {
        let f = parse_anf("x1", Some(4)).unwrap();
        assert_eq!(f.arity(), 4);
        assert_eq!(parse_anf("1", None).unwrap().arity(), 1);
        assert_eq!(
            parse_anf("x0 ^ x5", Some(3)),
            Err(Error::Parse {
                line: 1,
                column: 6,
                message: "variable x5 out of range for 3 variables".into()
            })
        );
    }

    #[test]
    fn errors_report_columns() {
        let col = |s: &str| match parse_anf(s, None) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(col("x0 ^ ^ x1"), 6);
        assert_eq!(col("x0 + x1"), 4);
        assert_eq!(col("x0 ^ x"), 7);
        assert_eq!(col("x0 ^"), 5);
        assert_eq!(col("x0 * ^ x1"), 5);
        assert_eq!(col("y0"), 1);
        assert_eq!(col("x99"), 1);
    }
}
