use std::fmt;

use thiserror::Error;

use super::{GadgetId, PathId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HubKind {
    A,
    B,
    C,
}

impl HubKind {
    pub const ALL: [HubKind; 3] = [HubKind::A, HubKind::B, HubKind::C];

    pub fn letter(self) -> char {
        match self {
            HubKind::A => 'a',
            HubKind::B => 'b',
            HubKind::C => 'c',
        }
    }
}

/// Semantic role of a vertex. Indices are 1-based, as in the construction.
///
/// Path internals and gadget vertices refer to registries owned by the graph;
/// use [`super::LabeledGraph::label_string`] to render those with their names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    /// Selector `s_i^j`.
    Selector { i: u32, j: u32 },
    /// Hub `a_r`, `b_r` or `c_r`.
    Hub { kind: HubKind, r: u8 },
    PairU { r: u8, i: u32 },
    PairV { r: u8, i: u32 },
    AnchorP { i: u32, h: u8 },
    AnchorQ { i: u32, h: u8 },
    AnchorPi { i: u32, h: u8 },
    PathInternal { path: PathId, offset: u32 },
    Twin1(GadgetId),
    Twin2(GadgetId),
    /// Connecting vertex created for a gadget (only when no existing vertex is reused).
    Connector(GadgetId),
    /// Unstructured vertex of a graph that does not come from a reduction.
    Plain(u32),
}

impl fmt::Display for VertexLabel {
    /// Registry-backed labels render with raw indices here; the graph-aware
    /// form is `LabeledGraph::label_string`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexLabel::Selector { i, j } => write!(f, "s[{i},{j}]"),
            VertexLabel::Hub { kind, r } => write!(f, "{}[{r}]", kind.letter()),
            VertexLabel::PairU { r, i } => write!(f, "u[{r},{i}]"),
            VertexLabel::PairV { r, i } => write!(f, "v[{r},{i}]"),
            VertexLabel::AnchorP { i, h } => write!(f, "p[{i},{h}]"),
            VertexLabel::AnchorQ { i, h } => write!(f, "q[{i},{h}]"),
            VertexLabel::AnchorPi { i, h } => write!(f, "pi[{i},{h}]"),
            VertexLabel::PathInternal { path, offset } => write!(f, "pv[#{},{offset}]", path.0),
            VertexLabel::Twin1(g) => write!(f, "twin1[#{}]", g.0),
            VertexLabel::Twin2(g) => write!(f, "twin2[#{}]", g.0),
            VertexLabel::Connector(g) => write!(f, "conn[#{}]", g.0),
            VertexLabel::Plain(k) => write!(f, "x[{k}]"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad label {text:?}: {reason}")]
pub struct LabelParseError {
    pub text: String,
    pub reason: &'static str,
}

/// A label as written in a labels file, before path and gadget names are
/// interned into a graph's registries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawLabel {
    Fixed(VertexLabel),
    PathInternal { path: String, offset: u32 },
    Twin1(String),
    Twin2(String),
    Connector(String),
}

impl RawLabel {
    pub fn parse(text: &str) -> Result<Self, LabelParseError> {
        let err = |reason| LabelParseError {
            text: text.to_string(),
            reason,
        };
        let open = text.find('[').ok_or_else(|| err("missing '['"))?;
        if !text.ends_with(']') {
            return Err(err("missing closing ']'"));
        }
        let head = &text[..open];
        let body = &text[open + 1..text.len() - 1];
        let nums = |count: usize| -> Result<Vec<u32>, LabelParseError> {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != count {
                return Err(err("wrong number of indices"));
            }
            parts
                .iter()
                .map(|p| p.trim().parse::<u32>().map_err(|_| err("index is not an integer")))
                .collect()
        };
        let small = |x: u32| u8::try_from(x).map_err(|_| err("index out of range"));
        let fixed = match head {
            "s" => {
                let v = nums(2)?;
                VertexLabel::Selector { i: v[0], j: v[1] }
            }
            "a" | "b" | "c" => {
                let kind = match head {
                    "a" => HubKind::A,
                    "b" => HubKind::B,
                    _ => HubKind::C,
                };
                VertexLabel::Hub {
                    kind,
                    r: small(nums(1)?[0])?,
                }
            }
            "u" | "v" => {
                let v = nums(2)?;
                let r = small(v[0])?;
                if head == "u" {
                    VertexLabel::PairU { r, i: v[1] }
                } else {
                    VertexLabel::PairV { r, i: v[1] }
                }
            }
            "p" | "q" | "pi" => {
                let v = nums(2)?;
                let (i, h) = (v[0], small(v[1])?);
                match head {
                    "p" => VertexLabel::AnchorP { i, h },
                    "q" => VertexLabel::AnchorQ { i, h },
                    _ => VertexLabel::AnchorPi { i, h },
                }
            }
            "x" => VertexLabel::Plain(nums(1)?[0]),
            "pv" => {
                let comma = body.rfind(',').ok_or_else(|| err("missing path offset"))?;
                let offset = body[comma + 1..]
                    .parse::<u32>()
                    .map_err(|_| err("path offset is not an integer"))?;
                let path = &body[..comma];
                if path.is_empty() {
                    return Err(err("empty path id"));
                }
                return Ok(RawLabel::PathInternal {
                    path: path.to_string(),
                    offset,
                });
            }
            "twin1" | "twin2" | "conn" => {
                if body.is_empty() {
                    return Err(err("empty gadget id"));
                }
                let name = body.to_string();
                return Ok(match head {
                    "twin1" => RawLabel::Twin1(name),
                    "twin2" => RawLabel::Twin2(name),
                    _ => RawLabel::Connector(name),
                });
            }
            _ => return Err(err("unknown role")),
        };
        Ok(RawLabel::Fixed(fixed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_role() {
        let cases = [
            ("s[2,3]", VertexLabel::Selector { i: 2, j: 3 }),
            ("a[1]", VertexLabel::Hub { kind: HubKind::A, r: 1 }),
            ("c[3]", VertexLabel::Hub { kind: HubKind::C, r: 3 }),
            ("u[2,1]", VertexLabel::PairU { r: 2, i: 1 }),
            ("v[3,2]", VertexLabel::PairV { r: 3, i: 2 }),
            ("pi[1,2]", VertexLabel::AnchorPi { i: 1, h: 2 }),
            ("q[4,1]", VertexLabel::AnchorQ { i: 4, h: 1 }),
            ("x[9]", VertexLabel::Plain(9)),
        ];
        for (text, want) in cases {
            assert_eq!(RawLabel::parse(text), Ok(RawLabel::Fixed(want)));
            assert_eq!(want.to_string(), text);
        }
    }

    #[test]
    fn path_and_gadget_ids_may_contain_brackets_and_commas() {
        assert_eq!(
            RawLabel::parse("pv[P[1](2,3,a[1]),17]"),
            Ok(RawLabel::PathInternal {
                path: "P[1](2,3,a[1])".into(),
                offset: 17
            })
        );
        assert_eq!(
            RawLabel::parse("twin2[F[1](2,3,a[1])]"),
            Ok(RawLabel::Twin2("F[1](2,3,a[1])".into()))
        );
        assert_eq!(RawLabel::parse("conn[F1(u[2,1])]"), Ok(RawLabel::Connector("F1(u[2,1])".into())));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "s", "s[1]", "s[1,x]", "zz[1]", "pv[abc]", "twin1[]", "a[1", "a[999]"] {
            assert!(RawLabel::parse(bad).is_err(), "{bad}");
        }
    }
}
