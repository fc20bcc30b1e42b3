//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! Phi := "true" | "false" | IDENT | "!" Phi | Phi "&" Phi | Phi "|" Phi
//!      | "N+" Phi | "N-" Phi
//!      | "rho+" "(" Phi "," Phi ")" | "rho-" "(" Phi "," Phi ")"
//!      | "sigma+" Phi | "sigma-" Phi
//!      | "zeta+" "(" Phi "," Phi ")" | "zeta-" "(" Phi "," Phi ")"
//!      | "S" "(" Phi "," Phi ")" | "P" "(" Phi "," Phi ")"
//!      | "(" Phi ")"
//! ```
//!
//! `!` binds tighter than `&`, which binds tighter than `|`; the unary
//! modalities bind like `!`. Whitespace is insignificant. Identifiers match
//! `[A-Za-z_][A-Za-z0-9_]*` and may not be keywords.

use super::ast::Formula;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    True,
    False,
    Ident(String),
    Bang,
    Amp,
    Pipe,
    LParen,
    RParen,
    Comma,
    NearFwd,
    NearBwd,
    RhoFwd,
    RhoBwd,
    SigmaFwd,
    SigmaBwd,
    ZetaFwd,
    ZetaBwd,
    Surround,
    Propagate,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '!' => {
                i += 1;
                Tok::Bang
            }
            '&' => {
                i += 1;
                Tok::Amp
            }
            '|' => {
                i += 1;
                Tok::Pipe
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &input[i..j];
                i = j;
                let signed = |fwd: Tok, bwd: Tok, i: &mut usize| -> Result<Tok, ParseError> {
                    match bytes.get(*i).map(|&b| b as char) {
                        Some('+') => {
                            *i += 1;
                            Ok(fwd)
                        }
                        Some('-') => {
                            *i += 1;
                            Ok(bwd)
                        }
                        _ => Err(ParseError {
                            pos: start,
                            message: format!(
                                "operator {word:?} must be followed by '+' or '-'"
                            ),
                        }),
                    }
                };
                match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "N" => signed(Tok::NearFwd, Tok::NearBwd, &mut i)?,
                    "rho" => signed(Tok::RhoFwd, Tok::RhoBwd, &mut i)?,
                    "sigma" => signed(Tok::SigmaFwd, Tok::SigmaBwd, &mut i)?,
                    "zeta" => signed(Tok::ZetaFwd, Tok::ZetaBwd, &mut i)?,
                    "S" => Tok::Surround,
                    "P" => Tok::Propagate,
                    _ => Tok::Ident(word.to_string()),
                }
            }
            other => {
                return Err(ParseError {
                    pos: i,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        toks.push((start, tok));
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError {
                pos: self.here(),
                message: format!("expected {what}"),
            })
        }
    }

    fn or_expr(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.and_expr()?];
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            parts.push(self.and_expr()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        })
    }

    fn and_expr(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::NearFwd) => {
                self.pos += 1;
                Ok(Formula::near_fwd(self.unary()?))
            }
            Some(Tok::NearBwd) => {
                self.pos += 1;
                Ok(Formula::near_bwd(self.unary()?))
            }
            Some(Tok::SigmaFwd) => {
                self.pos += 1;
                Ok(Formula::sigma_fwd(self.unary()?))
            }
            Some(Tok::SigmaBwd) => {
                self.pos += 1;
                Ok(Formula::sigma_bwd(self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn pair_args(&mut self, name: &str) -> Result<(Formula, Formula), ParseError> {
        self.expect(Tok::LParen, &format!("'(' after {name}"))?;
        let f1 = self.or_expr()?;
        self.expect(Tok::Comma, "','")?;
        let f2 = self.or_expr()?;
        self.expect(Tok::RParen, "')'")?;
        Ok((f1, f2))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::True) => Ok(Formula::True),
            Some(Tok::False) => Ok(Formula::False),
            Some(Tok::Ident(name)) => Ok(Formula::Atom(name)),
            Some(Tok::LParen) => {
                let f = self.or_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::RhoFwd) => {
                let (f1, f2) = self.pair_args("rho+")?;
                Ok(Formula::rho_fwd(f1, f2))
            }
            Some(Tok::RhoBwd) => {
                let (f1, f2) = self.pair_args("rho-")?;
                Ok(Formula::rho_bwd(f1, f2))
            }
            Some(Tok::ZetaFwd) => {
                let (f1, f2) = self.pair_args("zeta+")?;
                Ok(Formula::zeta_fwd(f1, f2))
            }
            Some(Tok::ZetaBwd) => {
                let (f1, f2) = self.pair_args("zeta-")?;
                Ok(Formula::zeta_bwd(f1, f2))
            }
            Some(Tok::Surround) => {
                let (f1, f2) = self.pair_args("S")?;
                Ok(Formula::surround(f1, f2))
            }
            Some(Tok::Propagate) => {
                let (f1, f2) = self.pair_args("P")?;
                Ok(Formula::propagate(f1, f2))
            }
            _ => Err(ParseError {
                pos,
                message: "expected a formula".into(),
            }),
        }
    }
}

/// Parse the concrete syntax into a [`Formula`].
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    let f = p.or_expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError {
            pos: p.here(),
            message: "trailing input after formula".into(),
        });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_forms() {
        assert_eq!(
            parse_formula("rho+(b, r)").unwrap(),
            Formula::rho_fwd(Formula::atom("b"), Formula::atom("r"))
        );
        assert_eq!(
            parse_formula("!N-(g) & sigma+(b)").unwrap(),
            Formula::And(vec![
                Formula::not(Formula::near_bwd(Formula::atom("g"))),
                Formula::sigma_fwd(Formula::atom("b")),
            ])
        );
        assert_eq!(
            parse_formula("S(r, b)").unwrap(),
            Formula::surround(Formula::atom("r"), Formula::atom("b"))
        );
    }

    #[test]
    fn precedence() {
        // ! > & > |
        let f = parse_formula("!a & b | c").unwrap();
        assert_eq!(
            f,
            Formula::Or(vec![
                Formula::And(vec![Formula::not(Formula::atom("a")), Formula::atom("b")]),
                Formula::atom("c"),
            ])
        );
        let g = parse_formula("a | b & !c | d").unwrap();
        assert_eq!(
            g,
            Formula::Or(vec![
                Formula::atom("a"),
                Formula::And(vec![Formula::atom("b"), Formula::not(Formula::atom("c"))]),
                Formula::atom("d"),
            ])
        );
        // unary modalities bind like '!'
        let h = parse_formula("N+ a & b").unwrap();
        assert_eq!(
            h,
            Formula::And(vec![
                Formula::near_fwd(Formula::atom("a")),
                Formula::atom("b")
            ])
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("a &").unwrap_err();
        assert_eq!(e.pos, 3);
        let e = parse_formula("rho(a, b)").unwrap_err();
        assert!(e.message.contains("'+' or '-'"));
        let e = parse_formula("a @ b").unwrap_err();
        assert_eq!(e.pos, 2);
        let e = parse_formula("S a").unwrap_err();
        assert!(e.message.contains("'('"));
        assert!(parse_formula("").is_err());
        assert!(parse_formula("a b").is_err());
    }

    #[test]
    fn keywords_are_not_atoms() {
        // "true" parses as the literal, not an atom
        assert_eq!(parse_formula("true").unwrap(), Formula::True);
        // bare keyword misuse is a syntax error
        assert!(parse_formula("zeta").is_err());
    }

    #[test]
    fn display_round_trips() {
        let samples = [
            "rho+(b, r)",
            "!N-(g) & sigma+(b)",
            "S(r, b)",
            "a | b & !c | d",
            "zeta-(a & b, c | !d)",
            "P(N+ a, sigma- b)",
            "!(a | b)",
        ];
        for s in samples {
            let f = parse_formula(s).unwrap();
            let printed = f.to_string();
            let g = parse_formula(&printed).unwrap();
            assert_eq!(f, g, "round trip failed for {s:?} -> {printed:?}");
        }
    }
}
