//! The knot specification grammar and the named diagram families.
//!
//! Grammar:
//! ```text
//!   spec    := "unknot"
//!            | "torus" "(" int "," int ")"
//!            | "pretzel" "(" int "," int "," int ")"
//!            | "braid" "(" ints ")"            -- signed Artin generators
//!            | "pd" "(" "[" tuple,* "]" ")"    -- tuple = [a,b,c,d], 1-based edges
//!            | "mirror" "(" spec ")"
//!   ints    := int ("," int)*  |  "[" int ("," int)* "]"
//! ```

use std::fmt;

use crate::diagram::{Edge, EdgeUnion, PlanarDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotSpec {
    Unknot,
    Torus(i64, i64),
    Pretzel(i64, i64, i64),
    Braid(Vec<i64>),
    Pd(Vec<[Edge; 4]>),
    Mirror(Box<KnotSpec>),
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSpec::Unknot => write!(f, "unknot"),
            KnotSpec::Torus(p, q) => write!(f, "torus({p},{q})"),
            KnotSpec::Pretzel(p, q, r) => write!(f, "pretzel({p},{q},{r})"),
            KnotSpec::Braid(w) => {
                let items: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "braid({})", items.join(","))
            }
            KnotSpec::Pd(xs) => {
                let items: Vec<String> =
                    xs.iter().map(|x| format!("[{},{},{},{}]", x[0], x[1], x[2], x[3])).collect();
                write!(f, "pd([{}])", items.join(","))
            }
            KnotSpec::Mirror(s) => write!(f, "mirror({s})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(got) => self.err(format!("expected '{c}', found '{got}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.chars().take_while(|c| c.is_ascii_alphabetic()).count();
        if len == 0 {
            return self.err("expected a name");
        }
        let word = rest[..len].to_string();
        self.pos += len;
        Ok(word)
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut len = 0;
        let bytes = rest.as_bytes();
        if len < bytes.len() && (bytes[len] == b'-' || bytes[len] == b'+') {
            len += 1;
        }
        let digits_start = len;
        while len < bytes.len() && bytes[len].is_ascii_digit() {
            len += 1;
        }
        if len == digits_start {
            return self.err("expected an integer");
        }
        let v: i64 = rest[..len].parse().map_err(|_| Error::Parse {
            pos: self.pos,
            msg: "integer out of range".into(),
        })?;
        self.pos += len;
        Ok(v)
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        let bracketed = self.peek() == Some('[');
        if bracketed {
            self.expect('[')?;
        }
        let mut out = vec![self.int()?];
        while self.peek() == Some(',') {
            self.expect(',')?;
            out.push(self.int()?);
        }
        if bracketed {
            self.expect(']')?;
        }
        Ok(out)
    }

    fn tuple4(&mut self) -> Result<[Edge; 4]> {
        self.expect('[')?;
        let mut vals = [0 as Edge; 4];
        for (k, v) in vals.iter_mut().enumerate() {
            if k > 0 {
                self.expect(',')?;
            }
            let x = self.int()?;
            if x < 1 || x > u32::MAX as i64 {
                return self.err("edge identifiers are 1-based positive integers");
            }
            *v = x as Edge;
        }
        self.expect(']')?;
        Ok(vals)
    }

    fn spec(&mut self) -> Result<KnotSpec> {
        let name = self.ident()?;
        match name.as_str() {
            "unknot" => Ok(KnotSpec::Unknot),
            "torus" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(',')?;
                let q = self.int()?;
                self.expect(')')?;
                Ok(KnotSpec::Torus(p, q))
            }
            "pretzel" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(',')?;
                let q = self.int()?;
                self.expect(',')?;
                let r = self.int()?;
                self.expect(')')?;
                Ok(KnotSpec::Pretzel(p, q, r))
            }
            "braid" => {
                self.expect('(')?;
                let w = self.int_list()?;
                self.expect(')')?;
                Ok(KnotSpec::Braid(w))
            }
            "pd" => {
                self.expect('(')?;
                self.expect('[')?;
                let mut xs = vec![self.tuple4()?];
                while self.peek() == Some(',') {
                    self.expect(',')?;
                    xs.push(self.tuple4()?);
                }
                self.expect(']')?;
                self.expect(')')?;
                Ok(KnotSpec::Pd(xs))
            }
            "mirror" => {
                self.expect('(')?;
                let inner = self.spec()?;
                self.expect(')')?;
                Ok(KnotSpec::Mirror(Box::new(inner)))
            }
            other => self.err(format!("unknown constructor '{other}'")),
        }
    }
}

/// Parse a knot specification string.
pub fn parse_knot_spec(text: &str) -> Result<KnotSpec> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("trailing input");
    }
    Ok(spec)
}

/// Parse and construct in one step.
pub fn diagram_for(text: &str) -> Result<PlanarDiagram> {
    parse_knot_spec(text)?.to_diagram()
}

impl KnotSpec {
    pub fn to_diagram(&self) -> Result<PlanarDiagram> {
        match self {
            KnotSpec::Unknot => Ok(PlanarDiagram::unknot()),
            KnotSpec::Torus(p, q) => {
                if *p < 2 || *q < 2 {
                    return Err(Error::Domain(format!(
                        "torus({p},{q}): both parameters must be at least 2"
                    )));
                }
                let mut word = Vec::with_capacity((*p as usize - 1) * *q as usize);
                for _ in 0..*q {
                    for i in 1..*p {
                        word.push(i);
                    }
                }
                braid_closure(&word)
            }
            KnotSpec::Pretzel(p, q, r) => pretzel(*p, *q, *r),
            KnotSpec::Braid(w) => braid_closure(w),
            KnotSpec::Pd(xs) => {
                let basepoint = xs[0][0];
                PlanarDiagram::new(xs.clone(), vec![], basepoint)
            }
            KnotSpec::Mirror(inner) => Ok(inner.to_diagram()?.mirror()),
        }
    }
}

/// Closure of a braid word in signed Artin generators; strand count is one
/// more than the largest generator index used.
pub fn braid_closure(word: &[i64]) -> Result<PlanarDiagram> {
    if word.iter().any(|x| *x == 0) {
        return Err(Error::Domain("braid word contains a zero letter".into()));
    }
    let strands = word.iter().map(|x| x.unsigned_abs() as usize + 1).max().unwrap_or(1);
    let mut next_edge: Edge = strands as Edge + 1;
    let initial: Vec<Edge> = (1..=strands as Edge).collect();
    let mut current = initial.clone();
    let mut crossings: Vec<[Edge; 4]> = Vec::with_capacity(word.len());
    for w in word {
        let i = (w.unsigned_abs() - 1) as usize;
        let u = current[i]; // bottom-left
        let v = current[i + 1]; // bottom-right
        let x = next_edge; // top-left
        let y = next_edge + 1; // top-right
        next_edge += 2;
        if *w > 0 {
            // Over-strand bottom-left -> top-right; incoming under at bottom-right.
            crossings.push([v, y, x, u]);
        } else {
            // Over-strand bottom-right -> top-left; incoming under at bottom-left.
            crossings.push([u, v, y, x]);
        }
        current[i] = x;
        current[i + 1] = y;
    }
    // Close up: identify the top of each strand with its bottom.
    let mut uf = EdgeUnion::new();
    for (c, i) in current.iter().zip(&initial) {
        uf.union(*c, *i);
    }
    let crossings: Vec<[Edge; 4]> =
        crossings.iter().map(|x| [uf.find(x[0]), uf.find(x[1]), uf.find(x[2]), uf.find(x[3])]).collect();
    let mut free = Vec::new();
    for i in &initial {
        let root = uf.find(*i);
        if !crossings.iter().any(|x| x.contains(&root)) && !free.contains(&root) {
            free.push(root);
        }
    }
    let basepoint = crossings.first().map(|x| x[0]).unwrap_or_else(|| free[0]);
    PlanarDiagram::new(crossings, free, basepoint)
}

/// Standard 3-stranded pretzel diagram: three vertical twist regions with
/// `p`, `q`, `r` signed crossings, closed in a cycle.
pub fn pretzel(p: i64, q: i64, r: i64) -> Result<PlanarDiagram> {
    if p == 0 || q == 0 || r == 0 {
        return Err(Error::Domain("pretzel parameters must be nonzero".into()));
    }
    let params = [p, q, r];
    let mut next: Edge = 1;
    let mut alloc = |n: usize| -> Vec<Edge> {
        let v: Vec<Edge> = (next..next + n as Edge).collect();
        next += n as Edge;
        v
    };
    // Per band: left and right strand edges, top to bottom.
    let mut left: Vec<Vec<Edge>> = Vec::new();
    let mut right: Vec<Vec<Edge>> = Vec::new();
    for k in params {
        let m = k.unsigned_abs() as usize;
        left.push(alloc(m + 1));
        right.push(alloc(m + 1));
    }
    let mut crossings: Vec<[Edge; 4]> = Vec::new();
    for (j, k) in params.iter().enumerate() {
        let m = k.unsigned_abs() as usize;
        for t in 0..m {
            let (lt, rt) = (left[j][t], right[j][t]);
            let (lb, rb) = (left[j][t + 1], right[j][t + 1]);
            if *k > 0 {
                // Right strand passes over: under-strand runs NW -> SE.
                // Counterclockwise from incoming under (NW): NW, SW, SE, NE.
                crossings.push([lt, lb, rb, rt]);
            } else {
                // Left strand passes over: under-strand runs NE -> SW.
                // Counterclockwise from incoming under (NE): NE, NW, SW, SE.
                crossings.push([rt, lt, lb, rb]);
            }
        }
    }
    // Closure arcs: tops r_j ~ l_{j+1}, bottoms likewise, wrapping around.
    let mut uf = EdgeUnion::new();
    for j in 0..3 {
        let jn = (j + 1) % 3;
        uf.union(right[j][0], left[jn][0]);
        uf.union(*right[j].last().unwrap(), *left[jn].last().unwrap());
    }
    let crossings: Vec<[Edge; 4]> =
        crossings.iter().map(|x| [uf.find(x[0]), uf.find(x[1]), uf.find(x[2]), uf.find(x[3])]).collect();
    let basepoint = crossings[0][0];
    PlanarDiagram::new(crossings, vec![], basepoint)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic_forms() {
        assert_eq!(parse_knot_spec("unknot").unwrap(), KnotSpec::Unknot);
        assert_eq!(parse_knot_spec(" torus( 2 , 3 ) ").unwrap(), KnotSpec::Torus(2, 3));
        assert_eq!(parse_knot_spec("pretzel(-3,5,7)").unwrap(), KnotSpec::Pretzel(-3, 5, 7));
        assert_eq!(parse_knot_spec("braid(1,-2,1)").unwrap(), KnotSpec::Braid(vec![1, -2, 1]));
        assert_eq!(parse_knot_spec("braid([1,1,1])").unwrap(), KnotSpec::Braid(vec![1, 1, 1]));
        assert_eq!(
            parse_knot_spec("mirror(torus(2,3))").unwrap(),
            KnotSpec::Mirror(Box::new(KnotSpec::Torus(2, 3)))
        );
        let pd = parse_knot_spec("pd([[1,4,2,5],[3,6,4,1],[5,2,6,3]])").unwrap();
        assert_eq!(pd, KnotSpec::Pd(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]));
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_knot_spec("torus(1,)").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        assert!(parse_knot_spec("torus(2,3) junk").is_err());
        assert!(parse_knot_spec("noodle(2)").is_err());
    }

    #[test]
    fn torus_argument_validation() {
        assert!(KnotSpec::Torus(1, 5).to_diagram().is_err());
        assert!(KnotSpec::Pretzel(0, 1, 1).to_diagram().is_err());
    }

    #[test]
    fn torus_2_4_is_a_two_component_link() {
        let d = diagram_for("torus(2,4)").unwrap();
        assert_eq!(d.n_crossings(), 4);
        assert_eq!(d.components(), 2);
        assert_eq!(d.n_plus(), 4);
    }

    #[test]
    fn torus_knots_are_knots() {
        for (p, q, n) in [(2i64, 3i64, 3usize), (3, 5, 10), (4, 5, 15)] {
            let d = KnotSpec::Torus(p, q).to_diagram().unwrap();
            assert_eq!(d.n_crossings(), n);
            assert_eq!(d.components(), 1, "torus({p},{q})");
            assert_eq!(d.n_plus() as usize, n);
        }
    }

    #[test]
    fn pretzel_examples() {
        let d = diagram_for("pretzel(-3,5,7)").unwrap();
        assert_eq!(d.n_crossings(), 15);
        assert_eq!(d.components(), 1);
        let d = diagram_for("pretzel(-2,5,7)").unwrap();
        assert_eq!(d.components(), 1);
        let d = diagram_for("pretzel(-2,4,7)").unwrap();
        assert_eq!(d.components(), 2);
    }

    #[test]
    fn torus_2n_resolution_recursion() {
        // Resolving the last crossing of torus(2,n) one way gives the
        // torus(2,n-1) diagram, the other way an unknot diagram.
        for n in 3..=6 {
            let d = KnotSpec::Torus(2, n).to_diagram().unwrap();
            let last = d.n_crossings() - 1;
            let ident = d.resolve_crossing(last, 0).unwrap();
            let smaller = KnotSpec::Torus(2, n - 1).to_diagram().unwrap();
            assert_eq!(ident.crossing_multiset(), smaller.crossing_multiset(), "n={n}");
            let bridged = d.resolve_crossing(last, 1).unwrap();
            assert_eq!(bridged.components(), 1, "n={n}");
        }
    }

    #[test]
    fn braid_free_strand_becomes_loop() {
        let d = diagram_for("braid(1,1,1)").unwrap();
        assert_eq!(d.components(), 1);
        // Word on 3 strands touching only the first pair leaves strand 3 closed off.
        let d = KnotSpec::Braid(vec![1, 1, 1, 2, -2]).to_diagram().unwrap();
        assert_eq!(d.n_crossings(), 5);
    }

    #[test]
    fn mirror_spec_swaps_signs() {
        let d = diagram_for("mirror(torus(2,3))").unwrap();
        assert_eq!(d.n_plus(), 0);
        assert_eq!(d.n_minus(), 3);
    }
}
