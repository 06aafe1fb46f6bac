use crate::expr::lexer::{lex, SpannedTok, Tok};
use crate::expr::{Expr, ExprError};
use crate::gen_num::IndexSet;

/// Parses a whole string as one expression.
pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser::new(&toks, src.len());
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses a bracketed expression list `[e1, e2, ...]`.
pub fn parse_expr_list(src: &str) -> Result<Vec<Expr>, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser::new(&toks, src.len());
    let list = p.bracket_list()?;
    p.expect_end()?;
    Ok(list)
}

/// Parses a bracketed matrix `[[...], [...]]` with equal row lengths.
pub fn parse_expr_matrix(src: &str) -> Result<Vec<Vec<Expr>>, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser::new(&toks, src.len());
    p.expect_tok(&Tok::LBracket, "expected '['")?;
    let mut rows = Vec::new();
    loop {
        rows.push(p.bracket_list()?);
        if p.eat(&Tok::Comma) {
            continue;
        }
        p.expect_tok(&Tok::RBracket, "expected ']' after matrix rows")?;
        break;
    }
    p.expect_end()?;
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(ExprError::Parse {
            col: 1,
            msg: "matrix rows must have equal length".into(),
        });
    }
    Ok(rows)
}

struct Parser<'a> {
    toks: &'a [SpannedTok],
    pos: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [SpannedTok], src_len: usize) -> Self {
        Parser {
            toks,
            pos: 0,
            end_col: src_len + 1,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.col)
            .unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_tok(&mut self, tok: &Tok, msg: &str) -> Result<(), ExprError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(msg))
        }
    }

    fn expect_end(&mut self) -> Result<(), ExprError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn error(&self, msg: impl Into<String>) -> ExprError {
        ExprError::Parse {
            col: self.col(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                let rhs = self.term()?;
                lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
            } else if self.eat(&Tok::Minus) {
                let rhs = self.term()?;
                lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                let rhs = self.unary()?;
                lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
            } else if self.eat(&Tok::Slash) {
                let rhs = self.unary()?;
                lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat(&Tok::Minus) {
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Expr::Number(v)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect_tok(&Tok::RParen, "expected ')'")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => self.ident_expr(&name, col),
            Some(_) => Err(ExprError::Parse {
                col,
                msg: "expected a number, 'eps', a function, or '('".into(),
            }),
            None => Err(ExprError::Parse {
                col,
                msg: "unexpected end of expression".into(),
            }),
        }
    }

    fn ident_expr(&mut self, name: &str, col: usize) -> Result<Expr, ExprError> {
        match name {
            "eps" => Ok(Expr::Eps),
            "pow" => {
                self.expect_tok(&Tok::LParen, "expected '(' after 'pow'")?;
                let base = self.expr()?;
                self.expect_tok(&Tok::Comma, "expected ',' in 'pow'")?;
                let n = self.integer()?;
                self.expect_tok(&Tok::RParen, "expected ')'")?;
                Ok(Expr::Pow(Box::new(base), n))
            }
            "exp" => {
                self.expect_tok(&Tok::LParen, "expected '(' after 'exp'")?;
                let inner = self.expr()?;
                self.expect_tok(&Tok::RParen, "expected ')'")?;
                Ok(Expr::Exp(Box::new(inner)))
            }
            "chi" => {
                self.expect_tok(&Tok::LParen, "expected '(' after 'chi'")?;
                let set = self.index_set()?;
                self.expect_tok(&Tok::RParen, "expected ')'")?;
                Ok(Expr::Chi(set))
            }
            _ => {
                if let Some(rest) = name.strip_prefix('x') {
                    if let Ok(i) = rest.parse::<usize>() {
                        if i >= 1 {
                            return Ok(Expr::Coord(i - 1));
                        }
                    }
                }
                Err(ExprError::Parse {
                    col,
                    msg: format!("unknown symbol '{name}'"),
                })
            }
        }
    }

    fn integer(&mut self) -> Result<i32, ExprError> {
        let neg = self.eat(&Tok::Minus);
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(v)) if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 => {
                let n = v as i32;
                Ok(if neg { -n } else { n })
            }
            _ => Err(ExprError::Parse {
                col,
                msg: "expected an integer".into(),
            }),
        }
    }

    fn unsigned_integer(&mut self) -> Result<u32, ExprError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(v)) if v.fract() == 0.0 && v >= 0.0 && v <= u32::MAX as f64 => {
                Ok(v as u32)
            }
            _ => Err(ExprError::Parse {
                col,
                msg: "expected a nonnegative integer".into(),
            }),
        }
    }

    fn index_set(&mut self) -> Result<IndexSet, ExprError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Ident(name)) => match name.as_str() {
                "even" => Ok(IndexSet::Even),
                "odd" => Ok(IndexSet::Odd),
                "pow2" => Ok(IndexSet::PowersOfTwo),
                "all" => Ok(IndexSet::All),
                "ap" => {
                    self.expect_tok(&Tok::LParen, "expected '(' after 'ap'")?;
                    let a = self.unsigned_integer()?;
                    self.expect_tok(&Tok::Comma, "expected ',' in 'ap'")?;
                    let d = self.unsigned_integer()?;
                    self.expect_tok(&Tok::RParen, "expected ')'")?;
                    if d == 0 {
                        return Err(ExprError::Parse {
                            col,
                            msg: "arithmetic progression step must be positive".into(),
                        });
                    }
                    Ok(IndexSet::ArithmeticProgression(a, d))
                }
                other => Err(ExprError::Parse {
                    col,
                    msg: format!("unknown index set '{other}'"),
                }),
            },
            Some(Tok::LBrace) => {
                let mut list = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    loop {
                        list.push(self.unsigned_integer()?);
                        if self.eat(&Tok::Comma) {
                            continue;
                        }
                        self.expect_tok(&Tok::RBrace, "expected '}' after index list")?;
                        break;
                    }
                }
                Ok(IndexSet::Explicit(list))
            }
            _ => Err(ExprError::Parse {
                col,
                msg: "expected an index set".into(),
            }),
        }
    }

    fn bracket_list(&mut self) -> Result<Vec<Expr>, ExprError> {
        self.expect_tok(&Tok::LBracket, "expected '['")?;
        let mut list = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(list);
        }
        loop {
            list.push(self.expr()?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect_tok(&Tok::RBracket, "expected ']'")?;
            break;
        }
        Ok(list)
    }
}
