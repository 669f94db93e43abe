use std::sync::Arc;

use crate::algebra::{build_path_algebra, BasedAlgebra, Quiver, Relation, RelationSet};
use crate::error::{Error, Result};
use crate::exactla::Scalar;

/// Contents of an algebra file before the algebra is built.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraFile {
    pub name: String,
    pub quiver: Quiver,
    pub relations: RelationSet,
    /// Vertex labels of the `idempotent` line.
    pub idempotent: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn build(&self, length_cap: usize) -> Result<Arc<BasedAlgebra>> {
        build_path_algebra(&self.name, &self.quiver, &self.relations, length_cap)
    }

    /// Vertex indices of the idempotent, if one is declared.
    pub fn idempotent_vertices(&self) -> Option<Vec<usize>> {
        self.idempotent.as_ref().map(|labels| {
            labels
                .iter()
                .map(|l| self.quiver.vertices().iter().position(|v| v == l).expect("checked while parsing"))
                .collect()
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Plus,
    Minus,
    Star,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '+' | '-' | '*' | '#')
}

/// Tokens of one line with their 1-based columns, comments removed.
fn lex(line_no: usize, line: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (_, c) = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((col, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((col, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Tok::Star));
                i += 1;
            }
            _ => {
                let start = i;
                while i < chars.len() && is_word_char(chars[i].1) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                if word.is_empty() {
                    return Err(syntax(line_no, col, format!("unexpected character '{c}'")));
                }
                out.push((col, Tok::Word(word)));
            }
        }
    }
    Ok(out)
}

struct Builder {
    name: Option<String>,
    vertices: Option<Vec<String>>,
    arrows: Vec<(String, String, String)>,
    relations: Vec<Relation>,
    idempotent: Option<Vec<String>>,
}

impl Builder {
    fn vertices(&self, line: usize, column: usize) -> Result<&[String]> {
        self.vertices.as_deref().ok_or_else(|| syntax(line, column, "'vertices' must come first"))
    }

    fn words(line: usize, toks: &[(usize, Tok)]) -> Result<Vec<(usize, String)>> {
        toks.iter()
            .map(|(c, t)| match t {
                Tok::Word(w) => Ok((*c, w.clone())),
                _ => Err(syntax(line, *c, "unexpected operator")),
            })
            .collect()
    }

    fn directive(&mut self, line: usize, toks: &[(usize, Tok)]) -> Result<()> {
        let (col, Tok::Word(head)) = &toks[0] else {
            return Err(syntax(line, toks[0].0, "expected a keyword"));
        };
        let rest = &toks[1..];
        let end = toks.last().map_or(1, |(c, _)| *c);
        match head.as_str() {
            "algebra" => {
                if self.name.is_some() {
                    return Err(syntax(line, *col, "duplicate 'algebra' line"));
                }
                let ws = Self::words(line, rest)?;
                let [(_, name)] = &ws[..] else {
                    return Err(syntax(line, end, "expected exactly one algebra name"));
                };
                self.name = Some(name.clone());
            }
            "vertices" => {
                if self.vertices.is_some() {
                    return Err(syntax(line, *col, "duplicate 'vertices' line"));
                }
                let ws = Self::words(line, rest)?;
                if ws.is_empty() {
                    return Err(syntax(line, end, "expected at least one vertex"));
                }
                let mut vs: Vec<String> = Vec::new();
                for (c, w) in ws {
                    if vs.contains(&w) {
                        return Err(syntax(line, c, format!("duplicate vertex '{w}'")));
                    }
                    vs.push(w);
                }
                self.vertices = Some(vs);
            }
            "arrow" => {
                let ws = Self::words(line, rest)?;
                let [(lc, label), (sc, src), (tc, tgt)] = &ws[..] else {
                    return Err(syntax(line, end, "expected 'arrow <label> <source> <target>'"));
                };
                let vs = self.vertices(line, *col)?;
                for (c, v) in [(sc, src), (tc, tgt)] {
                    if !vs.contains(v) {
                        return Err(syntax(line, *c, format!("unknown vertex '{v}'")));
                    }
                }
                if vs.contains(label) {
                    return Err(syntax(line, *lc, format!("arrow '{label}' clashes with a vertex")));
                }
                if self.arrows.iter().any(|(a, _, _)| a == label) {
                    return Err(syntax(line, *lc, format!("duplicate arrow '{label}'")));
                }
                self.arrows.push((label.clone(), src.clone(), tgt.clone()));
            }
            "rel" => {
                let rel = self.relation(line, rest, end)?;
                self.relations.push(rel);
            }
            "idempotent" => {
                if self.idempotent.is_some() {
                    return Err(syntax(line, *col, "duplicate 'idempotent' line"));
                }
                let ws = Self::words(line, rest)?;
                if ws.is_empty() {
                    return Err(syntax(line, end, "expected at least one vertex"));
                }
                let vs = self.vertices(line, *col)?;
                let mut out: Vec<String> = Vec::new();
                for (c, w) in ws {
                    if !vs.contains(&w) {
                        return Err(syntax(line, c, format!("unknown vertex '{w}'")));
                    }
                    if !out.contains(&w) {
                        out.push(w);
                    }
                }
                self.idempotent = Some(out);
            }
            other => return Err(syntax(line, *col, format!("unknown keyword '{other}'"))),
        }
        Ok(())
    }

    fn arrow(&self, line: usize, col: usize, label: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|(a, _, _)| a == label)
            .ok_or_else(|| syntax(line, col, format!("unknown arrow '{label}'")))
    }

    /// `[-] term ((+|-) term)*`, `term := [rational *] arrow (* arrow)*`.
    fn relation(&self, line: usize, toks: &[(usize, Tok)], end: usize) -> Result<Relation> {
        let mut terms: Vec<(Scalar, Vec<usize>)> = Vec::new();
        let mut ends: Option<(String, String)> = None;
        let mut i = 0;
        let mut sign = Scalar::one();
        if let Some((_, Tok::Minus)) = toks.first() {
            sign = -Scalar::one();
            i = 1;
        }
        loop {
            let term_col = toks.get(i).map_or(end, |(c, _)| *c);
            let mut coeff = sign.clone();
            let mut path = Vec::new();
            let mut expect_factor = true;
            while i < toks.len() {
                let (c, t) = &toks[i];
                match t {
                    Tok::Word(w) if expect_factor => {
                        let is_arrow = self.arrows.iter().any(|(a, _, _)| a == w);
                        match (is_arrow, w.parse::<Scalar>()) {
                            (false, Ok(x)) if path.is_empty() => coeff = &coeff * &x,
                            _ => path.push(self.arrow(line, *c, w)?),
                        }
                        expect_factor = false;
                    }
                    Tok::Star if !expect_factor => expect_factor = true,
                    Tok::Plus | Tok::Minus if !expect_factor => break,
                    _ => return Err(syntax(line, *c, "unexpected token in relation")),
                }
                i += 1;
            }
            if expect_factor {
                return Err(syntax(line, toks.get(i).map_or(end, |(c, _)| *c), "incomplete term"));
            }
            if path.len() < 2 {
                return Err(syntax(line, term_col, "relation terms must be paths of length at least 2"));
            }
            for w in path.windows(2) {
                if self.arrows[w[0]].2 != self.arrows[w[1]].1 {
                    return Err(syntax(
                        line,
                        term_col,
                        format!("arrows '{}' and '{}' do not compose", self.arrows[w[0]].0, self.arrows[w[1]].0),
                    ));
                }
            }
            let e = (self.arrows[path[0]].1.clone(), self.arrows[*path.last().unwrap()].2.clone());
            match &ends {
                Some(x) if *x != e => {
                    return Err(syntax(line, term_col, "relation terms have different endpoints"));
                }
                _ => ends = Some(e),
            }
            terms.push((coeff, path));
            match toks.get(i) {
                None => break,
                Some((_, Tok::Plus)) => sign = Scalar::one(),
                Some((_, Tok::Minus)) => sign = -Scalar::one(),
                Some((c, _)) => return Err(syntax(line, *c, "expected '+' or '-'")),
            }
            i += 1;
        }
        Ok(Relation { terms })
    }
}

/// Parses the line-oriented algebra format. Errors carry the line and column.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile> {
    let mut b = Builder { name: None, vertices: None, arrows: Vec::new(), relations: Vec::new(), idempotent: None };
    let mut last = 1;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last = line;
        let toks = lex(line, raw)?;
        if !toks.is_empty() {
            b.directive(line, &toks)?;
        }
    }
    let name = b.name.ok_or_else(|| syntax(last, 1, "missing 'algebra' line"))?;
    let vertices = b.vertices.ok_or_else(|| syntax(last, 1, "missing 'vertices' line"))?;
    if let Some(idem) = &b.idempotent {
        if idem.len() == vertices.len() {
            return Err(Error::FullSubset);
        }
    }
    let quiver = Quiver::new(vertices, b.arrows)?;
    Ok(AlgebraFile { name, quiver, relations: RelationSet::new(b.relations), idempotent: b.idempotent })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = "algebra preproj_a3
vertices 1 2 3
arrow a 1 2
arrow a' 2 1
arrow b 2 3
arrow b' 3 2
rel a * a'
rel b' * b
rel b * b' - a' * a
idempotent 1 3
";

    #[test]
    fn parses_the_preprojective_file() {
        let f = parse_algebra_file(P3).unwrap();
        assert_eq!(f.name, "preproj_a3");
        assert_eq!(f.relations.relations.len(), 3);
        assert_eq!(f.relations.relations[2].terms[1].0, -Scalar::one());
        assert_eq!(f.idempotent_vertices(), Some(vec![0, 2]));
        assert_eq!(f.build(64).unwrap().dim(), 10);
    }

    #[test]
    fn coefficients_and_comments() {
        let text = "# square\nalgebra sq\nvertices 1 2 3 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrel a*b - 1/2 * c*d # half\n";
        let f = parse_algebra_file(text).unwrap();
        assert_eq!(f.relations.relations[0].terms[1].0, Scalar::new(-1, 2));
        assert_eq!(f.build(64).unwrap().dim(), 9);
        assert!(f.idempotent.is_none());
    }

    fn err(text: &str) -> (usize, usize, String) {
        match parse_algebra_file(text) {
            Err(Error::Syntax { line, column, message }) => (line, column, message),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn anchored_errors() {
        let (l, c, m) = err("algebra x\nvertices 1 2\narrow a 1 2\nrel a * z\n");
        assert_eq!((l, c), (4, 9));
        assert!(m.contains("unknown arrow"));
        let (l, c, _) = err("algebra x\nvertices 1 2\narrow a 1 3\n");
        assert_eq!((l, c), (3, 11));
        let (l, _, m) = err("algebra x\nvertices 1 2\nfrobnicate\n");
        assert_eq!(l, 3);
        assert!(m.contains("unknown keyword"));
        let (l, _, m) = err("algebra x\nvertices 1 2\narrow a 1 2\narrow b 2 1\nrel a * b - b * a\n");
        assert_eq!(l, 5);
        assert!(m.contains("endpoints"));
        let (_, _, m) = err("algebra x\nvertices 1 2\narrow a 1 2\narrow b 1 2\nrel a * b\n");
        assert!(m.contains("compose"));
        let (_, _, m) = err("algebra x\nvertices 1\narrow a 1 1\nrel a\n");
        assert!(m.contains("length"));
        let (_, _, m) = err("vertices 1\n");
        assert!(m.contains("missing 'algebra'"));
        let (l, c, _) = err("algebra x\nvertices 1 2\nidempotent 3\n");
        assert_eq!((l, c), (3, 12));
    }
}
