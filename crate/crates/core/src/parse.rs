//! Curve-input parsing: an expression grammar over X, Y, Z, W with exact
//! integer or rational coefficients, plus an optional generator symbol t for
//! coefficients in a simple extension field.

use crate::biform::BiForm;
use crate::error::Error;
use crate::exact::field::{AlgScalar, Field, Rat};
use crate::exact::unipoly::UniPoly;

use num_bigint::BigInt;

/// Multivariate polynomial in X, Y, Z, W with scalar coefficients, used as
/// the parse result before bidegree checking.
#[derive(Clone)]
struct Poly4 {
    field: Field,
    /// (exponents (x, y, z, w), coefficient)
    terms: Vec<([usize; 4], AlgScalar)>,
}

impl Poly4 {
    fn constant(field: &Field, c: AlgScalar) -> Poly4 {
        Poly4 {
            field: field.clone(),
            terms: vec![([0, 0, 0, 0], c)],
        }
    }

    fn variable(field: &Field, idx: usize) -> Poly4 {
        let mut e = [0usize; 4];
        e[idx] = 1;
        Poly4 {
            field: field.clone(),
            terms: vec![(e, field.one())],
        }
    }

    fn normalize(mut self) -> Poly4 {
        self.terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<([usize; 4], AlgScalar)> = Vec::new();
        for (e, c) in self.terms {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 = last.1.add(&c);
                    continue;
                }
            }
            out.push((e, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly4 {
            field: self.field,
            terms: out,
        }
    }

    fn add(&self, other: &Poly4) -> Poly4 {
        let mut t = self.terms.clone();
        t.extend(other.terms.clone());
        Poly4 {
            field: self.field.clone(),
            terms: t,
        }
        .normalize()
    }

    fn neg(&self) -> Poly4 {
        Poly4 {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    fn mul(&self, other: &Poly4) -> Poly4 {
        let mut t = Vec::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                t.push((e, c1.mul(c2)));
            }
        }
        Poly4 {
            field: self.field.clone(),
            terms: t,
        }
        .normalize()
    }

    fn pow(&self, e: usize) -> Poly4 {
        let mut acc = Poly4::constant(&self.field, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, Error> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<Poly4, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly4, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.bump();
                    // division by a nonzero constant only
                    let d = self.factor()?;
                    if d.terms.len() != 1 || d.terms[0].0 != [0, 0, 0, 0] {
                        return self.err("division is only defined by constants");
                    }
                    let inv = d.terms[0]
                        .1
                        .inv()
                        .ok_or(Error::Parse {
                            pos: self.pos,
                            msg: "division by zero".into(),
                        })?;
                    acc = acc.mul(&Poly4::constant(&self.field, inv));
                }
                // implicit products are not part of the grammar
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly4, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.integer()?;
            if e < 0 {
                return self.err("negative exponent");
            }
            return Ok(base.pow(e as usize));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly4, Error> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Some(b'-') => {
                self.bump();
                Ok(self.factor()?.neg())
            }
            Some(b'+') => {
                self.bump();
                self.factor()
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                // rational literal "a/b" is handled by the term-level '/'
                Ok(Poly4::constant(
                    &self.field,
                    self.field.from_rat(Rat::from_integer(BigInt::from(n))),
                ))
            }
            Some(b'X') | Some(b'x') => {
                self.bump();
                Ok(Poly4::variable(&self.field, 0))
            }
            Some(b'Y') | Some(b'y') => {
                self.bump();
                Ok(Poly4::variable(&self.field, 1))
            }
            Some(b'Z') | Some(b'z') => {
                self.bump();
                Ok(Poly4::variable(&self.field, 2))
            }
            Some(b'W') | Some(b'w') => {
                self.bump();
                Ok(Poly4::variable(&self.field, 3))
            }
            Some(b't') => {
                self.bump();
                if self.field.is_rationals() {
                    return self.err("generator t used without --field");
                }
                Ok(Poly4::constant(&self.field, self.field.generator()))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        let mut n: i64 = 0;
        let mut any = false;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            n = n
                .checked_mul(10)
                .and_then(|v| v.checked_add((self.src[self.pos] - b'0') as i64))
                .ok_or(Error::Parse {
                    pos: start,
                    msg: "integer literal too large".into(),
                })?;
            self.pos += 1;
            any = true;
        }
        if !any {
            return self.err("expected an integer");
        }
        Ok(n)
    }
}

/// Parse a field descriptor like "t^2-2": a monic irreducible polynomial in t
/// adjoined to Q.
pub fn parse_field(spec: &str) -> Result<Field, Error> {
    let q = Field::rationals();
    // parse as a univariate polynomial in t over Q using the same machinery:
    // treat t as X in a 4-variable parse, then check purity
    let replaced = spec.replace('t', "X");
    let mut p = Parser {
        src: replaced.as_bytes(),
        pos: 0,
        field: q.clone(),
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse {
            pos: p.pos,
            msg: "trailing input in field descriptor".into(),
        });
    }
    let mut coeffs: Vec<AlgScalar> = Vec::new();
    for (e, c) in &poly.terms {
        if e[1] != 0 || e[2] != 0 || e[3] != 0 {
            return Err(Error::Parse {
                pos: 0,
                msg: "field descriptor must use only t".into(),
            });
        }
        if coeffs.len() <= e[0] {
            coeffs.resize(e[0] + 1, q.zero());
        }
        coeffs[e[0]] = c.clone();
    }
    let m = UniPoly::new(&q, "t", coeffs);
    if m.degree().map_or(true, |d| d < 1) {
        return Err(Error::Parse {
            pos: 0,
            msg: "field descriptor must have positive degree".into(),
        });
    }
    let monic = m.monic();
    if !crate::exact::factor::is_irreducible(&monic) {
        return Err(Error::Parse {
            pos: 0,
            msg: "minimal polynomial is not irreducible over Q".into(),
        });
    }
    let adj = crate::exact::factor::adjoin_root(&monic)?;
    Ok(adj.field)
}

/// Parse an expression into a bihomogeneous form of the given bidegree.
pub fn parse_biform(src: &str, field: &Field, bidegree: (usize, usize)) -> Result<BiForm, Error> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        field: field.clone(),
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    let (a, b) = bidegree;
    let mut form = BiForm::zero(field, a, b);
    let mut seen = (0usize, 0usize);
    for (e, c) in &poly.terms {
        let (dx, dz) = (e[0] + e[1], e[2] + e[3]);
        seen = (seen.0.max(dx), seen.1.max(dz));
        if dx != a || dz != b {
            return Err(Error::WrongBidegree { found: seen });
        }
        form.set_coeff(e[0], e[2], form.coeff(e[0], e[2]).add(c));
    }
    if form.is_zero() {
        return Err(Error::WrongBidegree { found: (0, 0) });
    }
    Ok(form)
}

/// Parse a (3,3) curve equation.
pub fn parse_curve(src: &str, field: &Field) -> Result<BiForm, Error> {
    parse_biform(src, field, (3, 3))
}

/// Serialize a form back to the expression grammar (round-trips exactly).
pub fn render_biform(f: &BiForm) -> String {
    format!("{}", f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn wall_curve_parses() {
        let f = parse_curve("X*Y*(X*W^3 + Y*Z^3)", &q()).unwrap();
        let expected = crate::weights::max_degenerate_a5_curve(&q());
        assert_eq!(f, expected);
    }

    #[test]
    fn triple_conic_parses() {
        let f = parse_curve("(X*Z - Y*W)^3", &q()).unwrap();
        let conic = BiForm::from_int_terms(&q(), 1, 1, &[(1, 1, 1), (-1, 0, 0)]);
        assert_eq!(f, conic.pow(3));
    }

    #[test]
    fn wrong_bidegree_rejected() {
        assert!(matches!(
            parse_curve("X^2", &q()),
            Err(Error::WrongBidegree { .. })
        ));
        assert!(matches!(
            parse_curve("X*Z - Y*W", &q()),
            Err(Error::WrongBidegree { .. })
        ));
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_curve("X^3*Z^3 + $", &q()) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("expected parse error, got {:?}", other.map(|f| format!("{}", f))),
        }
    }

    #[test]
    fn rational_coefficients() {
        let f = parse_curve("1/2 * X^3*Z^3 - 3/4 * Y^3*W^3", &q()).unwrap();
        assert_eq!(
            f.coeff(3, 3),
            &q().from_rat(crate::exact::field::rat(1, 2))
        );
        assert_eq!(
            f.coeff(0, 0),
            &q().from_rat(crate::exact::field::rat(-3, 4))
        );
    }

    #[test]
    fn extension_field_curve() {
        let k = parse_field("t^2-2").unwrap();
        assert_eq!(k.degree(), 2);
        let f = parse_curve("X^3*Z^3 + t*Y^3*W^3", &k).unwrap();
        assert_eq!(f.coeff(0, 0), &k.generator());
        // reducible descriptor rejected
        assert!(parse_field("t^2-1").is_err());
    }

    #[test]
    fn round_trip_through_render() {
        let f = parse_curve("2*X^3*Z^3 - X*Y^2*Z*W^2 + 5*Y^3*W^3", &q()).unwrap();
        let rendered = render_biform(&f);
        let g = parse_curve(&rendered, &q()).unwrap();
        assert_eq!(f, g);
    }
}
