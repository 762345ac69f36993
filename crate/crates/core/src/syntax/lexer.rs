use std::fmt;

use super::parser::Position;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(String),
    Bot,
    Colon,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Imp,
    Iff,
    /// `[]`, `[M]`, `[P]`
    BoxU,
    BoxM,
    BoxP,
    /// `<>`, `<M>`, `<P>`
    DiaU,
    DiaM,
    DiaP,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::Ident(name) => return write!(f, "identifier `{name}`"),
            TokenKind::Bot => "`bot`",
            TokenKind::Colon => "`:`",
            TokenKind::LParen => "`(`",
            TokenKind::RParen => "`)`",
            TokenKind::Not => "`~`",
            TokenKind::And => "`&`",
            TokenKind::Or => "`|`",
            TokenKind::Imp => "`->`",
            TokenKind::Iff => "`<->`",
            TokenKind::BoxU => "`[]`",
            TokenKind::BoxM => "`[M]`",
            TokenKind::BoxP => "`[P]`",
            TokenKind::DiaU => "`<>`",
            TokenKind::DiaM => "`<M>`",
            TokenKind::DiaP => "`<P>`",
            TokenKind::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub pos: Position,
}

/// Fixed-spelling tokens, longest first so that `<->` wins over `<>`.
const PUNCTUATION: &[(&str, TokenKind)] = &[
    ("<->", TokenKind::Iff),
    ("<M>", TokenKind::DiaM),
    ("<P>", TokenKind::DiaP),
    ("[M]", TokenKind::BoxM),
    ("[P]", TokenKind::BoxP),
    ("->", TokenKind::Imp),
    ("<>", TokenKind::DiaU),
    ("[]", TokenKind::BoxU),
    ("~", TokenKind::Not),
    ("&", TokenKind::And),
    ("|", TokenKind::Or),
    ("(", TokenKind::LParen),
    (")", TokenKind::RParen),
    (":", TokenKind::Colon),
];

/// Splits `src` into tokens. On an unrecognised character returns its
/// position and the character.
pub(crate) fn tokenize(src: &str, start: Position) -> Result<Vec<Token>, (Position, char)> {
    let mut tokens = Vec::new();
    let mut pos = start;
    let mut rest = src;

    let advance = |pos: &mut Position, text: &str| {
        for c in text.chars() {
            if c == '\n' {
                pos.line += 1;
                pos.column = 1;
            } else {
                pos.column += 1;
            }
        }
    };

    'outer: while let Some(c) = rest.chars().next() {
        if c.is_whitespace() {
            advance(&mut pos, &rest[..c.len_utf8()]);
            rest = &rest[c.len_utf8()..];
            continue;
        }
        if c == '#' {
            let end = rest.find('\n').unwrap_or(rest.len());
            advance(&mut pos, &rest[..end]);
            rest = &rest[end..];
            continue;
        }
        for (spelling, kind) in PUNCTUATION {
            if let Some(after) = rest.strip_prefix(spelling) {
                tokens.push(Token { kind: kind.clone(), pos });
                advance(&mut pos, spelling);
                rest = after;
                continue 'outer;
            }
        }
        if c.is_ascii_alphabetic() {
            let end = rest
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                .unwrap_or(rest.len());
            let word = &rest[..end];
            let kind = if word == "bot" {
                TokenKind::Bot
            } else {
                TokenKind::Ident(word.to_owned())
            };
            tokens.push(Token { kind, pos });
            advance(&mut pos, word);
            rest = &rest[end..];
            continue;
        }
        return Err((pos, c));
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        pos,
    });
    Ok(tokens)
}
