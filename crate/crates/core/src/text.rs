//! Line-oriented text formats.
//!
//! Tensor:
//! ```text
//! order 3 dim 2 domain integer
//! 1,1,1 3
//! 1,1,2 1
//! ```
//! Entry lines carry a sorted index and an integer or `p/q` value; omitted
//! indices are zero. The writer emits nonzero entries in storage order.
//!
//! Factor matrix: `dim d cols n`, then one comma-separated column per line.
//!
//! Multi-hypergraph: `order m vertices n`, then one sorted edge per line.
//!
//! In all three formats blank lines and lines starting with `#` are ignored.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gramian::FactorMatrix;
use crate::hypergraph::MultiHypergraph;
use crate::index::{join, MultiIndex};
use crate::scalar::Scalar;
use crate::tensor::{Domain, SymmetricTensor};

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Token<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, message)
    }

    fn number<N: FromStr>(&self, what: &str) -> Result<N> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected {what}, found '{}'", self.text)))
    }

    fn keyword(&self, word: &str) -> Result<()> {
        if self.text == word {
            Ok(())
        } else {
            Err(self.error(format!("expected '{word}', found '{}'", self.text)))
        }
    }

    /// Comma-separated pieces with their own columns.
    fn split_commas(&self) -> impl Iterator<Item = Token<'a>> + '_ {
        let mut offset = 0;
        self.text.split(',').map(move |piece| {
            let tok = Token {
                text: piece,
                line: self.line,
                column: self.column + offset,
            };
            offset += piece.len() + 1;
            tok
        })
    }
}

/// Content lines as whitespace-separated tokens.
fn content_lines(input: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    input.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let mut tokens = Vec::new();
        let mut rest = line;
        let mut consumed = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let after = &rest[start..];
            let len = after.find(char::is_whitespace).unwrap_or(after.len());
            tokens.push(Token {
                text: &after[..len],
                line: i + 1,
                column: consumed + start + 1,
            });
            consumed += start + len;
            rest = &after[len..];
        }
        Some((i + 1, tokens))
    })
}

fn expect_tokens<'a>(line: usize, tokens: &[Token<'a>], count: usize, shape: &str) -> Result<()> {
    if tokens.len() != count {
        let column = tokens.get(count).map_or(1, |t| t.column);
        return Err(Error::parse(line, column, format!("expected '{shape}'")));
    }
    Ok(())
}

fn parse_index(token: &Token<'_>) -> Result<Vec<usize>> {
    token
        .split_commas()
        .map(|t| t.number::<usize>("a vertex index"))
        .collect()
}

fn parse_scalar<T: Scalar>(token: &Token<'_>) -> Result<T> {
    T::parse_exact(token.text).ok_or_else(|| token.error(format!("invalid value '{}'", token.text)))
}

fn missing_header(what: &str) -> Error {
    Error::parse(1, 1, format!("missing '{what}' header"))
}

impl<T: Scalar> FromStr for SymmetricTensor<T> {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        const HEADER: &str = "order <m> dim <n> domain <binary|integer|rational>";
        let mut lines = content_lines(input);
        let (hline, header) = lines.next().ok_or_else(|| missing_header(HEADER))?;
        expect_tokens(hline, &header, 6, HEADER)?;
        header[0].keyword("order")?;
        let order: usize = header[1].number("an order")?;
        header[2].keyword("dim")?;
        let dim: usize = header[3].number("a dimension")?;
        header[4].keyword("domain")?;
        let domain: Domain = header[5]
            .text
            .parse()
            .map_err(|e: String| header[5].error(e))?;
        if order < 1 {
            return Err(header[1].error("order must be positive"));
        }

        let mut tensor =
            SymmetricTensor::<T>::zeros(order, dim).map_err(|e| header[1].error(e.to_string()))?;
        let mut entries: Vec<Option<T>> = vec![None; tensor.len()];
        for (line, tokens) in lines {
            expect_tokens(line, &tokens, 2, "i1,...,im value")?;
            let raw = parse_index(&tokens[0])?;
            let idx = tensor
                .shape()
                .canonical(&raw)
                .map_err(|e| tokens[0].error(e.to_string()))?;
            if idx.entries() != raw.as_slice() {
                return Err(tokens[0].error("index entries must be sorted"));
            }
            let value: T = parse_scalar(&tokens[1])?;
            if !domain.admits(&value) {
                return Err(
                    tokens[1].error(format!("value {value} is outside the {domain} domain"))
                );
            }
            let slot = &mut entries[tensor.shape().rank(&idx)];
            if slot.is_some() {
                return Err(tokens[0].error(format!("duplicate entry for {idx}")));
            }
            *slot = Some(value);
        }
        tensor = SymmetricTensor::from_entries(
            order,
            dim,
            tensor
                .indices()
                .zip(entries)
                .filter_map(|(idx, v)| v.map(|v| (idx.entries().to_vec(), v))),
        )?;
        tensor.with_domain(domain)
    }
}

impl<T: Scalar> fmt::Display for SymmetricTensor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "order {} dim {} domain {}",
            self.order(),
            self.dim(),
            self.domain()
        )?;
        for (idx, v) in self.iter() {
            if !v.is_zero() {
                writeln!(f, "{} {}", idx.to_csv(), v)?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> FromStr for FactorMatrix<T> {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        const HEADER: &str = "dim <d> cols <n>";
        let mut lines = content_lines(input);
        let (hline, header) = lines.next().ok_or_else(|| missing_header(HEADER))?;
        expect_tokens(hline, &header, 4, HEADER)?;
        header[0].keyword("dim")?;
        let dim: usize = header[1].number("a dimension")?;
        header[2].keyword("cols")?;
        let ncols: usize = header[3].number("a column count")?;

        let mut columns = Vec::with_capacity(ncols);
        let mut last_line = hline;
        for (line, tokens) in lines {
            last_line = line;
            expect_tokens(line, &tokens, 1, "v1,...,vd")?;
            if columns.len() == ncols {
                return Err(tokens[0].error(format!("more than {ncols} columns")));
            }
            let column: Vec<T> = tokens[0]
                .split_commas()
                .map(|t| parse_scalar(&t))
                .collect::<Result<_>>()?;
            if column.len() != dim {
                return Err(tokens[0].error(format!(
                    "column has {} entries, expected {dim}",
                    column.len()
                )));
            }
            columns.push(column);
        }
        if columns.len() != ncols {
            return Err(Error::parse(
                last_line + 1,
                1,
                format!("expected {ncols} columns, found {}", columns.len()),
            ));
        }
        FactorMatrix::new(dim, columns)
    }
}

impl<T: Scalar> fmt::Display for FactorMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {} cols {}", self.dim(), self.ncols())?;
        for col in self.columns() {
            writeln!(f, "{}", render_vector(col))?;
        }
        Ok(())
    }
}

/// Comma-separated exact values.
pub fn render_vector<T: Scalar>(v: &[T]) -> String {
    let mut out = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "{x}").expect("writing to a String");
    }
    out
}

/// Parses `x1,...,xn`.
pub fn parse_vector<T: Scalar>(s: &str) -> Result<Vec<T>> {
    let token = Token {
        text: s.trim(),
        line: 1,
        column: 1,
    };
    token.split_commas().map(|t| parse_scalar(&t)).collect()
}

impl FromStr for MultiHypergraph {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        const HEADER: &str = "order <m> vertices <n>";
        let mut lines = content_lines(input);
        let (hline, header) = lines.next().ok_or_else(|| missing_header(HEADER))?;
        expect_tokens(hline, &header, 4, HEADER)?;
        header[0].keyword("order")?;
        let order: usize = header[1].number("an order")?;
        header[2].keyword("vertices")?;
        let vertices: usize = header[3].number("a vertex count")?;
        if order < 1 {
            return Err(header[1].error("order must be positive"));
        }

        let mut edges = Vec::new();
        for (line, tokens) in lines {
            expect_tokens(line, &tokens, 1, "v1,...,vm")?;
            let raw = parse_index(&tokens[0])?;
            if raw.len() != order {
                return Err(
                    tokens[0].error(format!("edge has {} vertices, expected {order}", raw.len()))
                );
            }
            let idx = MultiIndex::canonicalize(&raw, vertices)
                .map_err(|e| tokens[0].error(e.to_string()))?;
            if idx.entries() != raw.as_slice() {
                return Err(tokens[0].error("edge vertices must be sorted"));
            }
            edges.push(raw);
        }
        MultiHypergraph::new(order, vertices, edges)
    }
}

impl fmt::Display for MultiHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {} vertices {}", self.order(), self.vertices())?;
        for e in self.edges() {
            writeln!(f, "{}", join(e.entries()))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn tensor_round_trip_is_bit_exact() {
        let text = "order 3 dim 2 domain rational\n1,1,1 3/2\n1,1,2 -1\n2,2,2 7\n";
        let t: SymmetricTensor<Rational> = text.parse().unwrap();
        assert_eq!(t.to_string(), text);
        assert_eq!(t.get(&[2, 1, 1]).unwrap().to_string(), "-1");
        assert_eq!(t.get(&[1, 2, 2]).unwrap().to_string(), "0");
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text =
            "# made by hand\n\norder 2 dim 2 domain integer\n  # entries\n1,1 1\n1,2 2\n2,2 5\n";
        let t: SymmetricTensor<Rational> = text.parse().unwrap();
        assert_eq!(
            t.to_string(),
            "order 2 dim 2 domain integer\n1,1 1\n1,2 2\n2,2 5\n"
        );
    }

    #[test]
    fn tensor_errors_carry_positions() {
        let cases = [
            ("order 2 dim 2\n", 1, 1),
            ("order 2 dim 2 domain binary\n1,1 2\n", 2, 5),
            ("order 2 dim 2 domain binary\n2,1 1\n", 2, 1),
            ("order 2 dim 2 domain binary\n1,3 1\n", 2, 1),
            ("order 2 dim 2 domain integer\n1,1 x\n", 2, 5),
            ("order 2 dim 2 domain integer\n1,1 1\n1,1 1\n", 3, 1),
            ("order 2 dim 2 domain integer\n1,z 1\n", 2, 3),
            ("order two dim 2 domain integer\n", 1, 7),
        ];
        for (text, line, column) in cases {
            match text.parse::<SymmetricTensor<Rational>>() {
                Err(Error::Parse {
                    line: l, column: c, ..
                }) => {
                    assert_eq!((l, c), (line, column), "{text:?}")
                }
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn factor_matrix_round_trip() {
        let text = "dim 2 cols 2\n1,0\n2,1\n";
        let b: FactorMatrix<Rational> = text.parse().unwrap();
        assert_eq!(b.column(1)[0], Rational::from_integer(2.into()));
        assert_eq!(b.to_string(), text);
        assert!("dim 2 cols 2\n1,0\n"
            .parse::<FactorMatrix<Rational>>()
            .is_err());
        assert!("dim 2 cols 1\n1,0,1\n"
            .parse::<FactorMatrix<Rational>>()
            .is_err());
    }

    #[test]
    fn hypergraph_round_trip() {
        let text = "order 3 vertices 4\n1,1,3\n1,3,4\n";
        let g: MultiHypergraph = text.parse().unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.to_string(), text);
        assert!("order 3 vertices 4\n1,3\n"
            .parse::<MultiHypergraph>()
            .is_err());
        assert!("order 3 vertices 4\n4,3,1\n"
            .parse::<MultiHypergraph>()
            .is_err());
    }
}
