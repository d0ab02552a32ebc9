//! Form expressions: `diag:a1,a2,...`, `gram:[[...],[...],...]`, `I<n>`,
//! `I<n>/<d>` (the form `(1/d)·I_n`) and `S<n>`. Entries use the rational
//! syntax `p` or `p/q`.

use std::fmt;

use qform_core::exactnum::parse_rational;
use qform_core::forms::{scaled_identity, simplex_form};
use qform_core::{QForm, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormError {
    /// Malformed text; `position` is a 0-based byte offset into the input.
    Syntax { position: usize, message: String },
    /// Well-formed text describing an unusable form.
    Invalid(qform_core::Error),
}

impl fmt::Display for FormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormError::Syntax { position, message } => write!(f, "syntax error at position {position}: {message}"),
            FormError::Invalid(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for FormError {}

fn syntax(position: usize, message: impl Into<String>) -> FormError {
    FormError::Syntax { position, message: message.into() }
}

/// Parses a form expression without checking definiteness.
pub fn parse_form_unchecked(text: &str) -> Result<QForm, FormError> {
    if let Some(rest) = text.strip_prefix("diag:") {
        let entries = parse_list(rest, 5)?;
        return QForm::diagonal(&entries).map_err(FormError::Invalid);
    }
    if let Some(rest) = text.strip_prefix("gram:") {
        return parse_gram(rest, 5);
    }
    if let Some(rest) = text.strip_prefix('S') {
        let n = parse_dim(rest, 1)?;
        return simplex_form(n).map_err(FormError::Invalid);
    }
    if let Some(rest) = text.strip_prefix('I') {
        let (dim_text, scale) = match rest.split_once('/') {
            Some((dim_text, d)) => {
                let offset = 1 + dim_text.len() + 1;
                let d = parse_rational(d).map_err(|_| syntax(offset, format!("invalid scale {d:?}")))?;
                (dim_text, Some((d, offset)))
            }
            None => (rest, None),
        };
        let n = parse_dim(dim_text, 1)?;
        let d = match scale {
            None => Rational::from_integer(1.into()),
            Some((d, offset)) => {
                if d <= Rational::from_integer(0.into()) {
                    return Err(syntax(offset, "scale must be positive"));
                }
                d
            }
        };
        return scaled_identity(n, &d).map_err(FormError::Invalid);
    }
    Err(syntax(0, "expected `diag:`, `gram:`, `I<n>` or `S<n>`"))
}

/// Parses a form expression and requires it to be positive definite.
pub fn parse_form(text: &str) -> Result<QForm, FormError> {
    let q = parse_form_unchecked(text)?;
    q.check_positive_definite().map_err(FormError::Invalid)?;
    Ok(q)
}

fn parse_dim(text: &str, offset: usize) -> Result<usize, FormError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(offset, format!("expected a dimension, found {text:?}")));
    }
    match text.parse::<usize>() {
        Ok(0) | Err(_) => Err(syntax(offset, "dimension must be a positive integer")),
        Ok(n) => Ok(n),
    }
}

fn parse_list(text: &str, offset: usize) -> Result<Vec<Rational>, FormError> {
    let mut out = Vec::new();
    let mut pos = offset;
    for item in text.split(',') {
        out.push(parse_rational(item).map_err(|_| syntax(pos, format!("invalid rational {item:?}")))?);
        pos += item.len() + 1;
    }
    Ok(out)
}

fn parse_gram(text: &str, offset: usize) -> Result<QForm, FormError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let expect = |i: usize, c: u8| -> Result<(), FormError> {
        match bytes.get(i) {
            Some(&b) if b == c => Ok(()),
            Some(&b) => Err(syntax(offset + i, format!("expected '{}', found '{}'", c as char, b as char))),
            None => Err(syntax(offset + i, format!("expected '{}', found end of input", c as char))),
        }
    };
    expect(i, b'[')?;
    i += 1;
    let mut rows = Vec::new();
    loop {
        expect(i, b'[')?;
        i += 1;
        let close = text[i..].find(']').ok_or_else(|| syntax(offset + i, "unterminated row"))?;
        let inner = &text[i..i + close];
        if let Some(bad) = inner.find('[') {
            return Err(syntax(offset + i + bad, "unexpected '['"));
        }
        rows.push(parse_list(inner, offset + i)?);
        i += close + 1;
        match bytes.get(i) {
            Some(b',') => i += 1,
            Some(b']') => {
                i += 1;
                break;
            }
            Some(&b) => return Err(syntax(offset + i, format!("expected ',' or ']', found '{}'", b as char))),
            None => return Err(syntax(offset + i, "unterminated matrix")),
        }
    }
    if i != bytes.len() {
        return Err(syntax(offset + i, "trailing characters"));
    }
    QForm::new(rows).map_err(FormError::Invalid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qform_core::exactnum::{int, rat};
    use qform_core::Error;

    #[test]
    fn examples() {
        assert_eq!(parse_form("I3").unwrap(), QForm::identity(3).unwrap());
        assert_eq!(parse_form("S2").unwrap().gram(), &vec![vec![int(1), rat(1, 2)], vec![rat(1, 2), int(1)]]);
        assert_eq!(parse_form("diag:2,3").unwrap(), QForm::diagonal(&[int(2), int(3)]).unwrap());
        assert_eq!(parse_form("I2/3").unwrap(), QForm::diagonal(&[rat(1, 3), rat(1, 3)]).unwrap());
        assert_eq!(
            parse_form("gram:[[1,1/2],[1/2,1]]").unwrap(),
            simplex_form(2).unwrap()
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let pos = |t: &str| match parse_form(t) {
            Err(FormError::Syntax { position, .. }) => position,
            other => panic!("{t}: {other:?}"),
        };
        assert_eq!(pos("X3"), 0);
        assert_eq!(pos("I"), 1);
        assert_eq!(pos("I0"), 1);
        assert_eq!(pos("diag:1,x"), 7);
        assert_eq!(pos("gram:[[1,0],[0,1]"), 17);
        assert_eq!(pos("gram:[[1,0];[0,1]]"), 11);
        assert_eq!(pos("gram:[[1,0],[0,1]]x"), 18);
        assert_eq!(pos("I2/0"), 3);
        assert_eq!(pos("I2/-1"), 3);
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(matches!(
            parse_form("diag:1,-2"),
            Err(FormError::Invalid(Error::NotPositiveDefinite { index: 2, .. }))
        ));
        assert!(matches!(
            parse_form("gram:[[1,2],[0,1]]"),
            Err(FormError::Invalid(Error::NotSymmetric(0, 1)))
        ));
        assert!(matches!(parse_form("gram:[[1,2]]"), Err(FormError::Invalid(Error::NotSquare))));
        assert!(parse_form_unchecked("diag:1,-2").is_ok());
    }

    #[test]
    fn display_round_trips() {
        for text in ["I3", "I4/7", "S5", "diag:2,3,3", "gram:[[2,1/3,0],[1/3,5,-1],[0,-1,7/2]]", "diag:1/2,5/3"] {
            let q = parse_form(text).unwrap();
            assert_eq!(parse_form(&q.to_string()).unwrap(), q, "{text}");
        }
    }
}
