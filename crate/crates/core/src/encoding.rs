//! Brace encoding of collections: `{{{1,1},{2,2}},{{2,1},{3,2}}}`.
//!
//! Each cell is written as its lower-left and upper-right corners. Whitespace is ignored.

use crate::error::{Error, Result};
use crate::grid::{Cell, CellCollection};

/// Formats cells in `(y, x)` order.
pub fn format_collection(c: &CellCollection) -> String {
    let mut s = String::from("{");
    for (k, cell) in c.cells().enumerate() {
        if k > 0 {
            s.push(',');
        }
        s.push_str(&format!(
            "{{{{{},{}}},{{{},{}}}}}",
            cell.x,
            cell.y,
            cell.x + 1,
            cell.y + 1
        ));
    }
    s.push('}');
    s
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(Error::parse(
                self.pos,
                format!("expected '{}', found '{}'", ch as char, b as char),
            )),
            None => Err(Error::parse(
                self.pos,
                format!("expected '{}', found end of input", ch as char),
            )),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') || self.bytes.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(Error::parse(start, "expected integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, "integer out of range"))
    }

    fn point(&mut self) -> Result<(i64, i64)> {
        self.expect(b'{')?;
        let x = self.int()?;
        self.expect(b',')?;
        let y = self.int()?;
        self.expect(b'}')?;
        Ok((x, y))
    }

    fn cell(&mut self) -> Result<Cell> {
        self.skip_ws();
        let start = self.pos;
        self.expect(b'{')?;
        let (x0, y0) = self.point()?;
        self.expect(b',')?;
        let (x1, y1) = self.point()?;
        self.expect(b'}')?;
        if x1 != x0 + 1 || y1 != y0 + 1 {
            return Err(Error::parse(
                start,
                format!("corner {{{x1},{y1}}} is not diagonal to {{{x0},{y0}}}"),
            ));
        }
        Ok(Cell::new(x0, y0))
    }
}

/// Parses the brace encoding. Duplicate cells are merged.
pub fn parse_collection(text: &str) -> Result<CellCollection> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.expect(b'{')?;
    let mut cells = Vec::new();
    if p.peek() == Some(b'}') {
        p.pos += 1;
    } else {
        loop {
            cells.push(p.cell()?);
            match p.peek() {
                Some(b',') => p.pos += 1,
                Some(b'}') => {
                    p.pos += 1;
                    break;
                }
                Some(b) => {
                    return Err(Error::parse(
                        p.pos,
                        format!("expected ',' or '}}', found '{}'", b as char),
                    ))
                }
                None => return Err(Error::parse(p.pos, "unterminated collection")),
            }
        }
    }
    if p.peek().is_some() {
        return Err(Error::parse(p.pos, "trailing input"));
    }
    Ok(CellCollection::build(cells).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = CellCollection::from_coords(&[(2, 1), (1, 1), (1, 2)]);
        let s = format_collection(&c);
        assert_eq!(s, "{{{1,1},{2,2}},{{2,1},{3,2}},{{1,2},{2,3}}}");
        assert_eq!(parse_collection(&s).unwrap(), c);
    }

    #[test]
    fn whitespace_and_negatives() {
        let c = parse_collection(" { { {-1, 0} , {0,1} } }\n").unwrap();
        assert_eq!(c, CellCollection::from_coords(&[(-1, 0)]));
        assert_eq!(parse_collection("{}").unwrap(), CellCollection::empty());
    }

    #[test]
    fn bad_corner_reports_offset() {
        match parse_collection("{{{1,1},{2,2}},{{1,1},{3,3}}}") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn truncated_input() {
        assert!(matches!(
            parse_collection("{{{1,1},{2,2}}"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_collection("{{{1,1},{2,2}}} x"),
            Err(Error::Parse { .. })
        ));
    }
}
