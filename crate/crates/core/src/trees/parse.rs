use super::{Edge, Forest, Tree};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    fn index_list(&mut self) -> Result<MultiIndex> {
        self.expect(b'[')?;
        let mut v = vec![self.number()?];
        while self.eat(b',') {
            v.push(self.number()?);
        }
        self.expect(b']')?;
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(MultiIndex::new(v))
    }

    /// `p` in `I[t,p]`: a bracketed list, or a bare integer when `d+1 = 1`.
    fn edge_index(&mut self) -> Result<MultiIndex> {
        if self.peek() == Some(b'[') {
            self.index_list()
        } else if self.dim == 1 {
            Ok(MultiIndex::new(vec![self.number()?]))
        } else {
            self.err("multi-index must be bracketed when d+1 > 1")
        }
    }

    fn label(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a type label");
        }
        Ok(String::from_utf8(self.src[start..self.pos].to_vec()).expect("ascii"))
    }

    fn factor(&mut self) -> Result<Tree> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(Tree::one(self.dim))
            }
            Some(b'X') => {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    Ok(Tree::monomial(self.index_list()?))
                } else {
                    Ok(Tree::x(self.dim, 0))
                }
            }
            Some(c @ (b'I' | b'J')) => {
                self.pos += 1;
                self.expect(b'[')?;
                let label = self.label()?;
                self.expect(b',')?;
                let deriv = self.edge_index()?;
                self.expect(b']')?;
                self.expect(b'(')?;
                let child = self.product()?;
                self.expect(b')')?;
                let mut e = Edge::new(&label, deriv);
                e.hat = c == b'J';
                Ok(Tree::planted(e, child))
            }
            Some(b'(') => {
                self.pos += 1;
                let t = self.product()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn product(&mut self) -> Result<Tree> {
        let mut t = self.factor()?;
        while self.eat(b'*') {
            t = t.mul(&self.factor()?);
        }
        Ok(t)
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            self.err("trailing input")
        } else {
            Ok(())
        }
    }
}

/// Parses one tree in dimension `dim`; labels are not checked here.
pub fn parse_tree(s: &str, dim: usize) -> Result<Tree> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        dim,
    };
    let t = p.product()?;
    p.finish()?;
    Ok(t)
}

/// Parses `t₁ . t₂ . ⋯`; `1` alone is the empty forest.
pub fn parse_forest(s: &str, dim: usize) -> Result<Forest> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        dim,
    };
    let mut trees = vec![p.product()?];
    while p.eat(b'.') {
        trees.push(p.product()?);
    }
    p.finish()?;
    Ok(Forest::new(trees))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_examples() {
        for s in [
            "1",
            "X",
            "X^[2]",
            "I[t,0](1)",
            "X*I[l,0](1)*I[t,1](X^[3]*I[t,0](1))",
            "J[t,2](1)",
        ] {
            let t = parse_tree(s, 1).unwrap();
            assert_eq!(t.to_string(), s);
            assert_eq!(parse_tree(&t.to_string(), 1).unwrap(), t);
        }
        let t = parse_tree("I[t,[1,0]](X^[0,2])", 2).unwrap();
        assert_eq!(t.to_string(), "I[t,[1,0]](X^[0,2])");
    }

    #[test]
    fn reordering_is_canonicalized() {
        let a = parse_tree("I[t,1](1) * X * I[l,0](1)", 1).unwrap();
        assert_eq!(a.to_string(), "X*I[l,0](1)*I[t,1](1)");
    }

    #[test]
    fn errors_carry_position() {
        assert!(matches!(parse_tree("I[t,0](", 1), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_tree("X^[1,2]", 1),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            parse_tree("X X", 1),
            Err(Error::Parse { pos: 2, .. })
        ));
    }

    #[test]
    fn forests() {
        let f = parse_forest("I[l,0](1) . I[t,0](I[l,0](1))", 1).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(parse_forest(&f.to_string(), 1).unwrap(), f);
        assert!(parse_forest("1", 1).unwrap().is_empty());
    }
}
