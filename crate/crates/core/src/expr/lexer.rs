use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Debug, Clone)]
pub(crate) struct SpannedTok {
    pub tok: Tok,
    /// 1-based column of the first character.
    pub col: usize,
}

pub(crate) fn lex(src: &str) -> Result<Vec<SpannedTok>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                out.push(SpannedTok {
                    tok: Tok::Plus,
                    col,
                });
                i += 1;
            }
            '-' => {
                out.push(SpannedTok {
                    tok: Tok::Minus,
                    col,
                });
                i += 1;
            }
            '*' => {
                out.push(SpannedTok {
                    tok: Tok::Star,
                    col,
                });
                i += 1;
            }
            '/' => {
                out.push(SpannedTok {
                    tok: Tok::Slash,
                    col,
                });
                i += 1;
            }
            '(' => {
                out.push(SpannedTok {
                    tok: Tok::LParen,
                    col,
                });
                i += 1;
            }
            ')' => {
                out.push(SpannedTok {
                    tok: Tok::RParen,
                    col,
                });
                i += 1;
            }
            '{' => {
                out.push(SpannedTok {
                    tok: Tok::LBrace,
                    col,
                });
                i += 1;
            }
            '}' => {
                out.push(SpannedTok {
                    tok: Tok::RBrace,
                    col,
                });
                i += 1;
            }
            '[' => {
                out.push(SpannedTok {
                    tok: Tok::LBracket,
                    col,
                });
                i += 1;
            }
            ']' => {
                out.push(SpannedTok {
                    tok: Tok::RBracket,
                    col,
                });
                i += 1;
            }
            ',' => {
                out.push(SpannedTok {
                    tok: Tok::Comma,
                    col,
                });
                i += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                // exponent part
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let value = text.parse::<f64>().map_err(|_| ExprError::Parse {
                    col,
                    msg: format!("malformed number literal '{text}'"),
                })?;
                out.push(SpannedTok {
                    tok: Tok::Num(value),
                    col,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(SpannedTok {
                    tok: Tok::Ident(text),
                    col,
                });
            }
            other => {
                return Err(ExprError::Parse {
                    col,
                    msg: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    Ok(out)
}
