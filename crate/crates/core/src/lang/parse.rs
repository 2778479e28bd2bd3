//! Hand-written lexer and recursive-descent parser for program text.
//!
//! ```text
//! program  := (clause)*
//! clause   := atom [":-" literal ("," literal)*] ("." | newline)
//! literal  := "not" atom | "true" | "false" | atom
//! atom     := ident ["(" term ("," term)* ")"]
//! term     := ident | Variable
//! ```
//!
//! A clause ends at `.`; it also ends at a line break when the line does not
//! finish with `:-` or `,`. Comments run from `%` to the end of the line.

use super::{LangError, Pos, SourceAtom, SourceLiteral, SourceProgram, SourceRule, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Not,
    If,
    Comma,
    LParen,
    RParen,
    Dot,
    Newline,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) => format!("`{s}`"),
            Tok::Not => "`not`".into(),
            Tok::If => "`:-`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn syntax(pos: Pos, message: impl Into<String>) -> LangError {
    LangError::Syntax {
        pos,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, LangError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        match c {
            '\n' => {
                chars.next();
                out.push((Tok::Newline, pos));
                line += 1;
                column = 1;
                continue;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                column += 1;
                continue;
            }
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    column += 1;
                }
                continue;
            }
            _ => {}
        }

        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            let tok = if c.is_ascii_uppercase() {
                Tok::Var(word)
            } else if word == "not" {
                Tok::Not
            } else {
                Tok::Ident(word)
            };
            out.push((tok, pos));
            continue;
        }

        chars.next();
        column += 1;
        let tok = match c {
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => Tok::Dot,
            ':' if chars.peek() == Some(&'-') => {
                chars.next();
                column += 1;
                Tok::If
            }
            _ => return Err(syntax(pos, format!("unexpected character {c:?}"))),
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, LangError> {
        Err(syntax(
            self.pos(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        ))
    }

    fn program(&mut self) -> Result<SourceProgram, LangError> {
        let mut rules = Vec::new();
        loop {
            self.skip_newlines();
            if *self.peek() == Tok::Eof {
                break;
            }
            rules.push(self.clause()?);
        }
        Ok(SourceProgram { rules })
    }

    fn clause(&mut self) -> Result<SourceRule, LangError> {
        let pos = self.pos();
        let head = match self.peek() {
            Tok::Ident(name) if name == "true" || name == "false" => {
                return Err(syntax(pos, format!("`{name}` cannot be a clause head")))
            }
            Tok::Ident(_) => self.atom()?,
            _ => return self.unexpected("a clause head"),
        };
        let mut body = Vec::new();
        if *self.peek() == Tok::If {
            self.bump();
            self.skip_newlines();
            body.push(self.literal()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                self.skip_newlines();
                body.push(self.literal()?);
            }
        }
        match self.peek() {
            Tok::Dot | Tok::Newline => {
                self.bump();
            }
            Tok::Eof => {}
            _ => return self.unexpected("`,`, `.` or end of line"),
        }
        Ok(SourceRule { head, body, pos })
    }

    fn literal(&mut self) -> Result<SourceLiteral, LangError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                match self.peek() {
                    Tok::Ident(name) if name == "true" || name == "false" => Err(syntax(
                        self.pos(),
                        format!("`not` cannot be applied to `{name}`"),
                    )),
                    Tok::Ident(_) => Ok(SourceLiteral::Neg(self.atom()?)),
                    _ => self.unexpected("an atom after `not`"),
                }
            }
            Tok::Ident(name) if name == "true" => {
                self.bump();
                Ok(SourceLiteral::True)
            }
            Tok::Ident(name) if name == "false" => {
                self.bump();
                Ok(SourceLiteral::False)
            }
            Tok::Ident(_) => Ok(SourceLiteral::Pos(self.atom()?)),
            _ => self.unexpected("a literal"),
        }
    }

    fn atom(&mut self) -> Result<SourceAtom, LangError> {
        let (tok, pos) = self.bump();
        let Tok::Ident(predicate) = tok else {
            return Err(syntax(pos, "expected a predicate name"));
        };
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            loop {
                let (tok, tpos) = self.bump();
                match tok {
                    Tok::Var(v) => args.push(Term::Var(v)),
                    Tok::Ident(c) if c == "true" || c == "false" => {
                        return Err(syntax(tpos, format!("`{c}` is reserved")))
                    }
                    Tok::Ident(c) => {
                        if *self.peek() == Tok::LParen {
                            return Err(syntax(
                                tpos,
                                format!("function symbol `{c}` is not supported"),
                            ));
                        }
                        args.push(Term::Const(c));
                    }
                    other => {
                        return Err(syntax(
                            tpos,
                            format!(
                                "expected a constant or variable, found {}",
                                other.describe()
                            ),
                        ))
                    }
                }
                match self.bump() {
                    (Tok::Comma, _) => continue,
                    (Tok::RParen, _) => break,
                    (other, p) => {
                        return Err(syntax(
                            p,
                            format!("expected `,` or `)`, found {}", other.describe()),
                        ))
                    }
                }
            }
        }
        Ok(SourceAtom {
            predicate,
            args,
            pos,
        })
    }
}

/// Parses program text into rules, without grounding.
pub fn parse_program(text: &str) -> Result<SourceProgram, LangError> {
    let toks = lex(text)?;
    Parser { toks, at: 0 }.program()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax_pos(text: &str) -> Pos {
        match parse_program(text) {
            Err(LangError::Syntax { pos, .. }) => pos,
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn two_clause_program() {
        let prog = parse_program("p :- not q.\nq :- false.").unwrap();
        assert_eq!(prog.rules.len(), 2);
        assert_eq!(prog.rules[0].head.predicate, "p");
        assert!(matches!(&prog.rules[0].body[..], [SourceLiteral::Neg(a)] if a.predicate == "q"));
        assert_eq!(prog.rules[1].body, vec![SourceLiteral::False]);
    }

    #[test]
    fn transitive_closure_with_variables() {
        let prog = parse_program("e(a,b).\nr(X,Y) :- e(X,Y).\nr(X,Y) :- e(X,Z), r(Z,Y).").unwrap();
        assert_eq!(prog.rules.len(), 3);
        assert!(prog.rules[0].body.is_empty());
        assert_eq!(prog.rules[2].body.len(), 2);
        assert_eq!(
            prog.rules[2].head.args,
            vec![Term::Var("X".into()), Term::Var("Y".into())]
        );
    }

    #[test]
    fn function_terms_are_rejected() {
        let pos = syntax_pos("p :- q(f(X)).");
        assert_eq!(pos, Pos { line: 1, column: 8 });
    }

    #[test]
    fn newline_terminates_clauses() {
        let prog = parse_program("p :- not q\nq :- false\n").unwrap();
        assert_eq!(prog.rules.len(), 2);
    }

    #[test]
    fn continuation_after_comma_or_if() {
        let prog = parse_program("p :-\n  q,\n  not r.\nq.").unwrap();
        assert_eq!(prog.rules.len(), 2);
        assert_eq!(prog.rules[0].body.len(), 2);
    }

    #[test]
    fn comments_are_ignored() {
        let prog = parse_program("% header\np. % trailing\n%q.\n").unwrap();
        assert_eq!(prog.rules.len(), 1);
    }

    #[test]
    fn several_clauses_on_one_line() {
        let prog = parse_program("e(a,b). r(X,Y) :- e(X,Y).").unwrap();
        assert_eq!(prog.rules.len(), 2);
    }

    #[test]
    fn error_positions() {
        assert_eq!(syntax_pos("p :- q\n  r :- ."), Pos { line: 2, column: 8 });
        assert_eq!(
            syntax_pos("p :- not true."),
            Pos {
                line: 1,
                column: 10
            }
        );
        assert_eq!(syntax_pos("true :- p."), Pos { line: 1, column: 1 });
        assert_eq!(syntax_pos("p :- q r."), Pos { line: 1, column: 8 });
        assert_eq!(syntax_pos("p(X :- q."), Pos { line: 1, column: 5 });
        assert_eq!(syntax_pos("p :- q ; r."), Pos { line: 1, column: 8 });
        assert_eq!(syntax_pos("X :- q."), Pos { line: 1, column: 1 });
        assert_eq!(syntax_pos("p :- ."), Pos { line: 1, column: 6 });
        assert_eq!(syntax_pos("p :- q,"), Pos { line: 1, column: 8 });
    }
}
