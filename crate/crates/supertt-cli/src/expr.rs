//! The variety expression language.
//!
//! ```text
//! query := set (("==" | "<=") set)?
//! set   := meet ("|" meet)*
//! meet  := atom ("&" atom)*
//! atom  := "V(" s "," t "," p ")" | "Z(" poly ("," poly)* ")"
//!        | "sat(" set ")" | "tau(" set ")" | "(" set ")"
//! ```
//!
//! `A <= B` asks whether `A ⊆ B`. Sets are evaluated while parsing, so an
//! inadmissible `V(s,t,p)` is reported at its position.

use supertt::polyring::parse_poly;
use supertt::variety::Variety;
use supertt::{Error, Poly, Result};

pub enum Answer {
    Set(Variety),
    Holds(bool),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    m: usize,
}

pub fn evaluate(src: &str, m: usize) -> Result<Answer> {
    let mut p = Parser { src, pos: 0, m };
    let left = p.set()?;
    p.skip_ws();
    let answer = if p.eat("==") {
        let right = p.set()?;
        Answer::Holds(left.equal(&right)?)
    } else if p.eat("<=") {
        let right = p.set()?;
        Answer::Holds(right.contains(&left)?)
    } else {
        Answer::Set(left)
    };
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("unexpected input"));
    }
    Ok(answer)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", token)))
        }
    }

    fn set(&mut self) -> Result<Variety> {
        let mut acc = self.meet()?;
        while self.eat("|") {
            acc = acc.union(&self.meet()?)?;
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<Variety> {
        let mut acc = self.atom()?;
        while self.eat("&") {
            acc = acc.intersect(&self.atom()?)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Variety> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("sat(") {
            let inner = self.set()?;
            self.expect(")")?;
            Ok(inner.sigma_saturate())
        } else if self.eat("tau(") {
            let inner = self.set()?;
            self.expect(")")?;
            Ok(inner.tau_twist())
        } else if self.eat("V(") {
            let s = self.number()?;
            self.expect(",")?;
            let t = self.number()?;
            self.expect(",")?;
            let p = self.number()?;
            self.expect(")")?;
            Variety::v_stp(self.m, s, t, p).map_err(|e| Error::Parse { pos: start, msg: inner_message(e) })
        } else if self.eat("Z(") {
            let gens = self.polynomials()?;
            Variety::zero_set(self.m, gens).map_err(|e| Error::Parse { pos: start, msg: inner_message(e) })
        } else if self.eat("(") {
            let inner = self.set()?;
            self.expect(")")?;
            Ok(inner)
        } else {
            Err(self.err("expected V(...), Z(...), sat(...), tau(...) or '('"))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected a number"));
        }
        let value = self.rest()[..digits].parse().map_err(|_| self.err("number too large"))?;
        self.pos += digits;
        Ok(value)
    }

    /// Comma-separated polynomials up to the matching `)`, which is consumed.
    fn polynomials(&mut self) -> Result<Vec<Poly>> {
        let bytes = self.src.as_bytes();
        let mut depth = 0usize;
        let mut pieces = Vec::new();
        let mut piece_start = self.pos;
        let mut i = self.pos;
        loop {
            match bytes.get(i) {
                None => {
                    self.pos = i;
                    return Err(self.err("expected ')'"));
                }
                Some(b'(') => depth += 1,
                Some(b')') if depth == 0 => break,
                Some(b')') => depth -= 1,
                Some(b',') if depth == 0 => {
                    pieces.push((piece_start, i));
                    piece_start = i + 1;
                }
                _ => {}
            }
            i += 1;
        }
        pieces.push((piece_start, i));
        // `Z()` is the whole space.
        if pieces.len() == 1 && self.src[self.pos..i].trim().is_empty() {
            self.pos = i + 1;
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for (a, b) in pieces {
            let text = &self.src[a..b];
            if text.trim().is_empty() {
                self.pos = a;
                return Err(self.err("empty polynomial"));
            }
            let poly = parse_poly(text, self.m).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: a + pos, msg },
                other => other,
            })?;
            out.push(poly);
        }
        self.pos = i + 1;
        Ok(out)
    }
}

fn inner_message(e: Error) -> String {
    match e {
        Error::InvalidParameters(msg) => msg,
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(src: &str, m: usize) -> Variety {
        match evaluate(src, m).unwrap() {
            Answer::Set(v) => v,
            Answer::Holds(_) => panic!("{} is a query", src),
        }
    }

    fn holds(src: &str, m: usize) -> bool {
        match evaluate(src, m).unwrap() {
            Answer::Holds(b) => b,
            Answer::Set(_) => panic!("{} is a set", src),
        }
    }

    #[test]
    fn coordinates() {
        assert_eq!(set("V(2,1,1)", 2).to_string(), "Z(X1, X2, Y2)");
        assert!(set("Z()", 1).equal(&Variety::whole(1)).unwrap());
        assert!(set("Z(X1, Y1)", 1).equal(&Variety::origin(1)).unwrap());
    }

    #[test]
    fn queries() {
        assert!(holds("sat(V(1,1,1)) <= sat(V(1,0,0))", 2));
        assert!(!holds("sat(V(1,0,0)) <= sat(V(1,1,1))", 2));
        assert!(holds("sat(V(1,0,0)) & sat(V(0,1,0)) == sat(V(1,1,0)) | sat(V(1,1,1))", 2));
        assert!(holds("tau(Z(X1)) == Z(Y1)", 1));
        assert!(holds("(V(1,0,0) | V(0,1,0)) & V(1,0,0) == V(1,0,0)", 2));
    }

    #[test]
    fn error_positions() {
        let pos = |src: &str| match evaluate(src, 2) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{} gave {:?}", src, other.map(|_| ())),
        };
        assert_eq!(pos("V(1,1"), 5);
        assert_eq!(pos("sat(V(1,0,0)) & W"), 16);
        assert_eq!(pos("Z(X1, X3)"), 6);
        assert_eq!(pos("V(3,0,0)"), 0);
        assert_eq!(pos("V(1,0,0) V(0,1,0)"), 9);
    }
}
