use std::io::{BufRead, Write};

use super::TreeDecomposition;
use crate::{Error, Result};

/// Writes `td` in the PACE `.td` text format:
///
/// ```text
/// c <comment>
/// s td <bags> <max-cardinality> <n>
/// b <id> <v> <v> ...
/// <i> <j>
/// ```
///
/// Bag ids and vertex ids are 1-based (vertex id = internal index + 1).
pub fn export_td<W: Write>(td: &TreeDecomposition, n: usize, comments: &[String], mut w: W) -> Result<()> {
    for c in comments {
        writeln!(w, "c {c}")?;
    }
    writeln!(w, "s td {} {} {}", td.n_bags(), td.max_cardinality(), n)?;
    for (i, bag) in td.bags.iter().enumerate() {
        write!(w, "b {}", i + 1)?;
        for &v in bag {
            write!(w, " {}", v + 1)?;
        }
        writeln!(w)?;
    }
    for &(a, b) in &td.edges {
        writeln!(w, "{} {}", a + 1, b + 1)?;
    }
    Ok(())
}

/// Reads the format written by [`export_td`]. Returns the decomposition and
/// the vertex count from the header. Nothing beyond syntax is checked;
/// see [`super::validate_td`].
pub fn import_td<R: BufRead>(reader: R) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<u32>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let mut tok = line.split_whitespace();
        let Some(first) = tok.next() else {
            continue;
        };
        let num = |s: Option<&str>, what: &str| -> Result<usize> {
            s.ok_or_else(|| Error::parse(lineno, format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|_| Error::parse(lineno, format!("bad {what}")))
        };
        match first {
            "c" => {}
            "s" => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "second header line"));
                }
                if tok.next() != Some("td") {
                    return Err(Error::parse(lineno, "expected \"s td\""));
                }
                let nb = num(tok.next(), "bag count")?;
                let _max_card = num(tok.next(), "maximum bag size")?;
                let n = num(tok.next(), "vertex count")?;
                header = Some((nb, n));
                bags = vec![None; nb];
            }
            "b" => {
                let (nb, n) = header.ok_or_else(|| Error::parse(lineno, "bag before header"))?;
                let id = num(tok.next(), "bag id")?;
                if id == 0 || id > nb {
                    return Err(Error::parse(lineno, format!("bag id {id} outside 1..={nb}")));
                }
                let mut bag = Vec::new();
                for t in tok {
                    let v: usize = t.parse().map_err(|_| Error::parse(lineno, format!("bad vertex {t:?}")))?;
                    if v == 0 || v > n {
                        return Err(Error::parse(lineno, format!("vertex {v} outside 1..={n}")));
                    }
                    bag.push(v as u32 - 1);
                }
                if bags[id - 1].replace(bag).is_some() {
                    return Err(Error::parse(lineno, format!("bag {id} given twice")));
                }
            }
            _ => {
                let (nb, _) = header.ok_or_else(|| Error::parse(lineno, "edge before header"))?;
                let a = num(Some(first), "bag id")?;
                let b = num(tok.next(), "bag id")?;
                if a == 0 || b == 0 || a > nb || b > nb {
                    return Err(Error::parse(lineno, format!("tree edge {a} {b} outside 1..={nb}")));
                }
                edges.push((a as u32 - 1, b as u32 - 1));
            }
        }
    }
    let (_, n) = header.ok_or_else(|| Error::parse(0, "missing \"s td\" header"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(0, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok((TreeDecomposition::new(bags, edges, 0, "imported"), n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_clique, gen_grid};
    use crate::ordering::order_mindeg;
    use crate::treedecomp::{gavril_td, validate_td};

    #[test]
    fn k3_single_bag_text() {
        let k = gen_clique(3);
        let td = gavril_td(&k, &order_mindeg(&k, 0));
        let mut buf = Vec::new();
        export_td(&td, 3, &[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "s td 1 3 3\nb 1 1 2 3\n");
    }

    #[test]
    fn round_trip() {
        let g = gen_grid(5, 6);
        let mut td = gavril_td(&g, &order_mindeg(&g, 7));
        let mut buf = Vec::new();
        export_td(&td, g.n(), &["seed=7".into()], &mut buf).unwrap();
        let (back, n) = import_td(buf.as_slice()).unwrap();
        assert_eq!(n, 30);
        td.source = back.source.clone();
        assert_eq!(back, td);
    }

    #[test]
    fn invalid_decomposition_loads_then_fails_validation() {
        let text = "s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n";
        let (td, _) = import_td(text.as_bytes()).unwrap();
        let g = crate::Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert!(!validate_td(&g, &td).is_valid());
    }

    #[test]
    fn malformed_inputs() {
        assert!(import_td("b 1 1\n".as_bytes()).is_err());
        assert!(import_td("s td 1 1 2\nb 1 5\n".as_bytes()).is_err());
        assert!(import_td("s td 2 1 2\nb 1 1\n".as_bytes()).is_err());
        assert!(import_td("s td 1 1 2\nb 1 1\n1 x\n".as_bytes()).is_err());
        assert!(import_td("".as_bytes()).is_err());
    }
}
