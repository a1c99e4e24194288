//! ASCII text for field elements and polynomials.
//!
//! Elements of `K` are polynomials in `w` (ω) with coefficients in `F`.
//! When `q` is prime those coefficients are integers `0..p-1`; otherwise
//! they are themselves written as polynomials in `z`, the generator of `F`,
//! and parenthesised when compound. Polynomials use the indeterminate `t`:
//! `t^3+t+1`, `t^2+w*t+w+1`, `(w+1)*t+w`.

use super::extension::FieldSpec;
use super::field::{Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// `Σ c_k v^k` from the highest power down; `coeffs[k]` is already rendered
/// and `"0"` marks an absent term.
fn render_sum(coeffs: &[String], var: &str) -> String {
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let power = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let term = if k == 0 {
            c.clone()
        } else if c == "1" {
            power
        } else if c.bytes().all(|b| b.is_ascii_digit()) {
            format!("{c}{power}")
        } else if c.contains('+') {
            format!("({c})*{power}")
        } else {
            format!("{c}*{power}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// An element of `GF(p^m)` in its own power basis, in the variable `var`.
pub fn format_field_elem(f: &Field, x: Elem, var: &str) -> String {
    if f.degree() == 1 {
        return x.0.to_string();
    }
    let c: Vec<String> = f.coords(x).into_iter().map(|d| d.to_string()).collect();
    render_sum(&c, var)
}

/// A polynomial over `f` in `t`, coefficients in the variable `var`.
pub fn format_field_poly(f: &Field, g: &Poly, var: &str) -> String {
    let c: Vec<String> = g.coeffs().iter().map(|&d| format_field_elem(f, d, var)).collect();
    render_sum(&c, "t")
}

impl FieldSpec {
    pub fn format_base(&self, x: Elem) -> String {
        format_field_elem(self.base(), x, "z")
    }

    pub fn format_elem(&self, x: Elem) -> String {
        let c: Vec<String> = self.coords(x).into_iter().map(|d| self.format_base(d)).collect();
        render_sum(&c, "w")
    }

    pub fn format_base_poly(&self, f: &Poly) -> String {
        let c: Vec<String> = f.coeffs().iter().map(|&d| self.format_base(d)).collect();
        render_sum(&c, "t")
    }

    pub fn format_ext_poly(&self, g: &Poly) -> String {
        let c: Vec<String> = g.coeffs().iter().map(|&d| self.format_elem(d)).collect();
        render_sum(&c, "t")
    }

    pub fn parse_base(&self, s: &str) -> Result<Elem> {
        constant(parse_expr(self.base(), &self.base_vars(), false, s)?)
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        constant(parse_expr(self.ext(), &self.ext_vars(), false, s)?)
    }

    pub fn parse_base_poly(&self, s: &str) -> Result<Poly> {
        parse_expr(self.base(), &self.base_vars(), true, s)
    }

    pub fn parse_ext_poly(&self, s: &str) -> Result<Poly> {
        parse_expr(self.ext(), &self.ext_vars(), true, s)
    }

    fn base_vars(&self) -> Vec<(char, Elem)> {
        if self.base().degree() > 1 {
            vec![('z', self.base().generator())]
        } else {
            Vec::new()
        }
    }

    fn ext_vars(&self) -> Vec<(char, Elem)> {
        let mut v = vec![('w', self.omega())];
        if self.base().degree() > 1 {
            v.push(('z', self.embed(self.base().generator())));
        }
        v
    }
}

fn constant(p: Poly) -> Result<Elem> {
    if p.deg() > 0 {
        return Err(Error::Parse("expected a field element, found a polynomial in t".into()));
    }
    Ok(p.coeff(0))
}

/// Parses sums, products, integer powers and parentheses over `f`, with the
/// named constants `vars` and, when `allow_t`, the indeterminate `t`.
pub fn parse_expr(f: &Field, vars: &[(char, Elem)], allow_t: bool, s: &str) -> Result<Poly> {
    let mut p = Parser { f, vars, allow_t, src: s.as_bytes(), pos: 0 };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(v)
}

struct Parser<'a> {
    f: &'a Field,
    vars: &'a [(char, Elem)],
    allow_t: bool,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.src)))
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

    fn sum(&mut self) -> Result<Poly> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut acc = self.product()?;
        if neg {
            acc = acc.neg(self.f);
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(self.f, &self.product()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(self.f, &self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(self.f, &self.power()?);
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = acc.mul(self.f, &self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u64 = e.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(self.f, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.integer()?;
                let p = self.f.characteristic() as u64;
                let r = digits.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Poly::constant(self.f.from_int(r as i64)))
            }
            Some(b't') if self.allow_t => {
                self.pos += 1;
                Ok(Poly::t())
            }
            Some(c) => match self.vars.iter().find(|(name, _)| *name as u8 == c) {
                Some(&(_, v)) => {
                    self.pos += 1;
                    Ok(Poly::constant(v))
                }
                None => Err(self.error("unknown symbol")),
            },
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse_gf4() {
        let s = FieldSpec::new(2, 2).unwrap();
        let w = s.omega();
        assert_eq!(s.format_elem(w), "w");
        assert_eq!(s.format_elem(s.ext().mul(w, w)), "w+1");
        assert_eq!(s.format_elem(Elem::ZERO), "0");
        assert_eq!(s.parse_elem("w^2").unwrap(), s.parse_elem("w+1").unwrap());
        let g = s.parse_ext_poly("t^2 + w*t + 1").unwrap();
        assert_eq!(s.format_ext_poly(&g), "t^2+w*t+1");
        let g = s.parse_ext_poly("t+w^2").unwrap();
        assert_eq!(s.format_ext_poly(&g), "t+w+1");
        assert_eq!(s.format_base_poly(s.modulus()), "t^2+t+1");
    }

    #[test]
    fn render_gf9_and_roundtrip() {
        let s = FieldSpec::new(3, 2).unwrap();
        assert_eq!(s.format_elem(s.frobenius_apply(s.omega(), 1)), "2w+1");
        for x in s.ext().elements() {
            assert_eq!(s.parse_elem(&s.format_elem(x)).unwrap(), x);
        }
        let f = s.parse_base_poly("t^3 - t + 2").unwrap();
        assert_eq!(s.format_base_poly(&f), "t^3+2t+2");
    }

    #[test]
    fn roundtrip_over_composite_base() {
        let s = FieldSpec::new(4, 2).unwrap();
        for x in s.ext().elements() {
            let text = s.format_elem(x);
            assert_eq!(s.parse_elem(&text).unwrap(), x, "{text}");
        }
        for x in s.base().elements() {
            assert_eq!(s.parse_base(&s.format_base(x)).unwrap(), x);
        }
    }

    #[test]
    fn parse_errors() {
        let s = FieldSpec::new(2, 2).unwrap();
        assert!(s.parse_elem("t").is_err());
        assert!(s.parse_elem("w+").is_err());
        assert!(s.parse_elem("x").is_err());
        assert!(s.parse_base("w").is_err());
    }
}
