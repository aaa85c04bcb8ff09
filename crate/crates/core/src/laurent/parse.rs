use std::iter::Peekable;
use std::str::CharIndices;

use num_bigint::BigInt;
use num_traits::One;

use super::{Exponent, Laurent};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polynomial parse error at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

struct Cursor<'a> {
    src: &'a str,
    chars: Peekable<CharIndices<'a>>,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn pos(&mut self) -> usize {
        self.peek().map(|(i, _)| i).unwrap_or(self.src.len())
    }

    fn err<T>(&mut self, msg: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek().is_some_and(|(_, c)| c == want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let (start, c) = self.peek()?;
        if !c.is_ascii_digit() {
            return None;
        }
        let mut end = start;
        while let Some(&(i, c)) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            end = i + c.len_utf8();
            self.chars.next();
        }
        Some(&self.src[start..end])
    }
}

fn parse_power(cur: &mut Cursor<'_>) -> Result<i64, PolyParseError> {
    if !cur.eat('^') {
        return Ok(1);
    }
    let braced = cur.eat('{');
    let negative = cur.eat('-');
    let Some(ds) = cur.digits() else {
        return cur.err("expected exponent digits");
    };
    let Ok(mut e) = ds.parse::<i64>() else {
        return cur.err("exponent out of range");
    };
    if negative {
        e = -e;
    }
    if braced && !cur.eat('}') {
        return cur.err("expected '}'");
    }
    Ok(e)
}

fn parse_term<E: Exponent>(cur: &mut Cursor<'_>) -> Result<(E, BigInt), PolyParseError> {
    let mut coeff = BigInt::one();
    let mut exp = E::identity();
    let mut first = true;
    loop {
        if !first && !cur.eat('*') {
            break;
        }
        first = false;
        match cur.peek() {
            Some((_, c)) if c.is_ascii_digit() => {
                let ds = cur.digits().expect("peeked a digit");
                coeff *= ds.parse::<BigInt>().expect("ascii digits");
            }
            Some((_, c)) if c.is_ascii_alphabetic() => {
                cur.chars.next();
                let power = parse_power(cur)?;
                let Some(f) = E::from_factor(c, power) else {
                    return cur.err(format!("unknown variable '{c}'"));
                };
                exp = exp.combine(f);
            }
            _ => return cur.err("expected coefficient or variable"),
        }
    }
    Ok((exp, coeff))
}

pub(super) fn parse_laurent<E: Exponent>(src: &str) -> Result<Laurent<E>, PolyParseError> {
    let mut cur = Cursor {
        src,
        chars: src.char_indices().peekable(),
    };
    let mut terms = Vec::new();
    let mut negative = cur.eat('-');
    if !negative {
        cur.eat('+');
    }
    loop {
        let (e, c) = parse_term::<E>(&mut cur)?;
        terms.push((e, if negative { -c } else { c }));
        if cur.eat('+') {
            negative = false;
        } else if cur.eat('-') {
            negative = true;
        } else {
            break;
        }
    }
    if cur.peek().is_some() {
        return cur.err("unexpected trailing input");
    }
    Ok(Laurent::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::super::{LaurentPoly1, LaurentPoly2, Monomial2};
    use num_bigint::BigInt;

    #[test]
    fn accepts_rendered_forms() {
        let p: LaurentPoly2 = "u^2*v - u + 1".parse().unwrap();
        assert_eq!(p.coeff(Monomial2::new(2, 1)), BigInt::from(1));
        assert_eq!(p.coeff(Monomial2::new(1, 0)), BigInt::from(-1));
        let q: LaurentPoly2 = "-2*u^{-1}*v^3 + 0".parse().unwrap();
        assert_eq!(q.len(), 1);
        let r: LaurentPoly1 = "t^2 - t - 1".parse().unwrap();
        assert_eq!(r.to_string(), "t^2 - t - 1");
    }

    #[test]
    fn rejects_garbage() {
        assert!("u +".parse::<LaurentPoly2>().is_err());
        assert!("t".parse::<LaurentPoly2>().is_err());
        assert!("u^".parse::<LaurentPoly2>().is_err());
        assert!("2 3".parse::<LaurentPoly1>().is_err());
    }
}
