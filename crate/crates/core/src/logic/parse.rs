use std::collections::BTreeSet;

use super::formula::{Formula, Fragment, LogicError, Predicate};
use crate::lts::{LabelId, Mts};

/// Parses the text syntax, reading `<a>phi` as a diamond in qualitative
/// fragments and as the quantitative next operator in metric fragments.
/// The result is checked against `fragment`.
pub fn parse_formula(m: &Mts, text: &str, fragment: Fragment) -> Result<Formula, LogicError> {
    let mut p = Parser {
        m,
        src: text,
        pos: 0,
        metric: fragment.is_metric(),
    };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    f.check(fragment)?;
    Ok(f)
}

/// Inverse of [`parse_formula`].
pub fn render(m: &Mts, f: &Formula) -> String {
    let labels = |b: &BTreeSet<LabelId>| {
        b.iter()
            .map(|&a| m.label_name(a))
            .collect::<Vec<_>>()
            .join(",")
    };
    let list = |fs: &[Formula]| {
        fs.iter()
            .map(|g| render(m, g))
            .collect::<Vec<_>>()
            .join(",")
    };
    match f {
        Formula::True => "true".into(),
        Formula::Diamond(a, g) | Formula::Next(a, g) => {
            format!("<{}>{}", m.label_name(*a), render(m, g))
        }
        Formula::And(fs) => format!("and({})", list(fs)),
        Formula::Or(fs) => format!("or({})", list(fs)),
        Formula::Not(g) => format!("not({})", render(m, g)),
        Formula::ShiftUp(g, r) => format!("shift+({},{})", render(m, g), r),
        Formula::ShiftDown(g, r) => format!("shift-({},{})", render(m, g), r),
        Formula::Pred(Predicate::Deadlock) => "pred:TX".into(),
        Formula::Pred(Predicate::Refuse(b)) => format!("pred:refuse{{{}}}", labels(b)),
        Formula::Pred(Predicate::Ready(b)) => format!("pred:ready{{{}}}", labels(b)),
        Formula::Pred(Predicate::G(a)) => format!("pred:g({})", m.label_name(*a)),
    }
}

struct Parser<'a> {
    m: &'a Mts,
    src: &'a str,
    pos: usize,
    metric: bool,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> LogicError {
        LogicError::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), LogicError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    /// Raw text up to (not including) the first of `stops`.
    fn until(&mut self, stops: &[char]) -> Result<&str, LogicError> {
        let rest = self.rest();
        let end = rest
            .find(stops)
            .ok_or_else(|| self.error("unterminated token"))?;
        let tok = &self.src[self.pos..self.pos + end];
        self.pos += end;
        Ok(tok.trim())
    }

    fn label(&self, name: &str) -> Result<LabelId, LogicError> {
        self.m
            .label_id(name)
            .ok_or_else(|| LogicError::UnknownLabel(name.to_string()))
    }

    fn label_set(&mut self) -> Result<BTreeSet<LabelId>, LogicError> {
        self.expect("{")?;
        let body = self.until(&['}'])?.to_string();
        self.expect("}")?;
        body.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.label(s))
            .collect()
    }

    fn list(&mut self) -> Result<Vec<Formula>, LogicError> {
        self.expect("(")?;
        let mut out = Vec::new();
        if self.eat(")") {
            return Ok(out);
        }
        loop {
            out.push(self.formula()?);
            if self.eat(")") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn formula(&mut self) -> Result<Formula, LogicError> {
        self.skip_ws();
        if self.eat("true") {
            Ok(Formula::True)
        } else if self.eat("<") {
            let name = self.until(&['>'])?.to_string();
            self.expect(">")?;
            let a = self.label(&name)?;
            let inner = Box::new(self.formula()?);
            Ok(if self.metric {
                Formula::Next(a, inner)
            } else {
                Formula::Diamond(a, inner)
            })
        } else if self.eat("and") {
            Ok(Formula::And(self.list()?))
        } else if self.eat("or") {
            Ok(Formula::Or(self.list()?))
        } else if self.eat("not") {
            self.expect("(")?;
            let inner = self.formula()?;
            self.expect(")")?;
            Ok(Formula::Not(Box::new(inner)))
        } else if self.eat("shift+") || self.eat("shift-") {
            let up = self.src[..self.pos].ends_with('+');
            self.expect("(")?;
            let inner = Box::new(self.formula()?);
            self.expect(",")?;
            let value = self.until(&[')'])?.parse()?;
            self.expect(")")?;
            Ok(if up {
                Formula::ShiftUp(inner, value)
            } else {
                Formula::ShiftDown(inner, value)
            })
        } else if self.eat("pred:") {
            if self.eat("TX") {
                Ok(Formula::Pred(Predicate::Deadlock))
            } else if self.eat("refuse") {
                Ok(Formula::Pred(Predicate::Refuse(self.label_set()?)))
            } else if self.eat("ready") {
                Ok(Formula::Pred(Predicate::Ready(self.label_set()?)))
            } else if self.eat("g(") {
                let name = self.until(&[')'])?.to_string();
                self.expect(")")?;
                Ok(Formula::Pred(Predicate::G(self.label(&name)?)))
            } else {
                Err(self.error("unknown predicate"))
            }
        } else {
            Err(self.error("expected a formula"))
        }
    }
}
