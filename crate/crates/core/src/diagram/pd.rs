use super::link::LinkDiagram;
use crate::{Error, Result};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_label(s: &str) -> Result<u32> {
    let v: u32 = s.trim().parse().map_err(|_| perr(format!("bad arc label '{}'", s.trim())))?;
    if v == 0 {
        return Err(perr("arc labels must be positive"));
    }
    Ok(v)
}

/// Parses `PD[X[a,b,c,d],...,Loop[k]]` (the `PD[...]` wrapper is optional)
/// or the JSON form `[[a,b,c,d],...]`. `PD[]` and `[]` denote the
/// crossingless unknot.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(perr("empty PD code"));
    }
    if t.starts_with('[') {
        let tuples: Vec<Vec<u32>> = serde_json::from_str(&t).map_err(|e| perr(format!("bad JSON PD code: {e}")))?;
        if tuples.is_empty() {
            return Ok(LinkDiagram::unknot());
        }
        let mut crossings = Vec::new();
        for x in tuples {
            let arr: [u32; 4] = x.try_into().map_err(|_| perr("each crossing needs exactly 4 labels"))?;
            if arr.contains(&0) {
                return Err(perr("arc labels must be positive"));
            }
            crossings.push(arr);
        }
        return LinkDiagram::new(crossings, vec![]);
    }
    let body = match t.strip_prefix("PD[") {
        Some(rest) => rest.strip_suffix(']').ok_or_else(|| perr("unterminated PD[...]"))?,
        None => t.as_str(),
    };
    if body.is_empty() {
        return Ok(LinkDiagram::unknot());
    }
    let (mut crossings, mut loops) = (Vec::new(), Vec::new());
    let mut rest = body;
    while !rest.is_empty() {
        let open = rest.find('[').ok_or_else(|| perr(format!("expected X[...] near '{rest}'")))?;
        let head = &rest[..open];
        let close = rest.find(']').ok_or_else(|| perr("unterminated crossing"))?;
        if close < open {
            return Err(perr(format!("malformed entry near '{rest}'")));
        }
        let args: Vec<&str> = rest[open + 1..close].split(',').collect();
        match head {
            "X" => {
                if args.len() != 4 {
                    return Err(perr(format!("crossing X[{}] needs 4 labels", &rest[open + 1..close])));
                }
                let mut arr = [0; 4];
                for (i, a) in args.iter().enumerate() {
                    arr[i] = parse_label(a)?;
                }
                crossings.push(arr);
            }
            "Loop" | "P" if args.len() == 1 => loops.push(parse_label(args[0])?),
            _ => return Err(perr(format!("unknown PD entry '{head}[...]'"))),
        }
        rest = &rest[close + 1..];
        rest = rest.strip_prefix(',').unwrap_or(rest);
    }
    LinkDiagram::new(crossings, loops)
}

/// A diagram with an optional name, as read from a batch file.
#[derive(Clone, Debug)]
pub struct NamedDiagram {
    pub name: String,
    pub diagram: LinkDiagram,
}

/// Parses a batch file: one diagram per line, `#` starts a comment, and an
/// optional leading name is separated from the code by whitespace.
pub fn parse_batch(text: &str) -> Result<Vec<NamedDiagram>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (name, code) = match line.find(|c: char| c.is_whitespace()) {
            Some(i) if !line.starts_with('[') && !line.starts_with("PD") && !line.starts_with("X[") => {
                (line[..i].to_string(), line[i..].trim())
            }
            _ => (format!("line{}", no + 1), line),
        };
        let diagram = parse_pd(code).map_err(|e| perr(format!("line {}: {e}", no + 1)))?;
        out.push(NamedDiagram { name, diagram });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_agree() {
        let a = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        let b = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap();
        let c = parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(parse_pd(&a.to_pd()).unwrap(), a);
    }

    #[test]
    fn errors() {
        assert!(parse_pd("").is_err());
        assert!(parse_pd("   ").is_err());
        assert!(parse_pd("PD[X[1,2,3]]").is_err());
        assert!(parse_pd("PD[X[1,4,2,5],X[3,6,4,1]]").is_err());
        assert!(parse_pd("PD[Y[1,1,2,2]]").is_err());
        assert!(parse_pd("[[0,1,1,0]]").is_err());
    }

    #[test]
    fn unknots() {
        assert_eq!(parse_pd("PD[]").unwrap().num_components(), 1);
        let d = parse_pd("PD[Loop[3],Loop[5]]").unwrap();
        assert_eq!(d.num_components(), 2);
    }

    #[test]
    fn batch() {
        let text = "# corpus\n3_1 PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]\n\n[[2,4,1,3],[4,2,3,1]] # hopf\n";
        let v = parse_batch(text).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].name, "3_1");
        assert_eq!(v[1].name, "line4");
    }
}
