//! Lie algebras presented by their coframe differentials (Salamon
//! notation), the Chevalley-Eilenberg differential, and invariant
//! cohomology.
//!
//! The sign convention is fixed once: the stored 2-form de^k evaluates as
//! `de^k(E_i, E_j) = -c^k_{ij}` where `[E_i, E_j] = sum_k c^k_{ij} E_k`.
//! So the shorthand "(0,0,0,0,12,13)" means de^5 = e^{12}, de^6 = e^{13},
//! i.e. [E_1, E_2] = -E_5 and [E_1, E_3] = -E_6.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::exterior::{
    basis_of_degree, sort_sign, ExteriorError, Form, FormOperator, MultiIndex,
};
use crate::scalar::{CScalar, Rational};

/// Named rational parameter bindings for specs like "(0,0,0,12,13,23)"
/// with coefficients such as λ or (1-λ).
pub type Params = BTreeMap<String, Rational>;

pub fn params(bindings: &[(&str, Rational)]) -> Params {
    bindings.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("exterior algebra error: {0}")]
    Exterior(#[from] ExteriorError),
    #[error("coframe differential {k} must be a 2-form, found a grade-{found} term")]
    NotATwoForm { k: u8, found: usize },
    #[error("expected {expected} coframe differentials, got {got}")]
    WrongComponentCount { expected: usize, got: usize },
    #[error("Salamon notation supports dimensions up to 9, got {0}")]
    NotationDimension(usize),
    #[error("malformed spec near {0:?}: {1}")]
    Malformed(String, &'static str),
    #[error("unbound parameter {0:?}")]
    UnboundParameter(String),
    #[error("division by zero in a coefficient expression")]
    CoefficientDivisionByZero,
    #[error("index pair {0:?} repeats an index")]
    RepeatedIndex(String),
    #[error("grade {k} outside 0..={n}")]
    GradeOutOfRange { k: usize, n: u8 },
}

/// A real Lie algebra of dimension n, stored through the differentials of
/// a fixed coframe e^1..e^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    n: u8,
    d_coframe: Vec<Form>,
}

impl LieAlgebra {
    /// `d_coframe[k-1]` is de^k; each entry must be zero or a pure 2-form.
    pub fn new(n: u8, d_coframe: Vec<Form>) -> Result<Self, LieError> {
        if d_coframe.len() != usize::from(n) {
            return Err(LieError::WrongComponentCount {
                expected: usize::from(n),
                got: d_coframe.len(),
            });
        }
        for (idx, f) in d_coframe.iter().enumerate() {
            if f.dimension() != n {
                return Err(LieError::Exterior(ExteriorError::DimensionMismatch {
                    left: n,
                    right: f.dimension(),
                }));
            }
            if let Some(&bad) = f.grades().iter().find(|&&g| g != 2) {
                return Err(LieError::NotATwoForm { k: idx as u8 + 1, found: bad });
            }
        }
        Ok(LieAlgebra { n, d_coframe })
    }

    pub fn abelian(n: u8) -> Self {
        LieAlgebra { n, d_coframe: vec![Form::zero(n); usize::from(n)] }
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    /// de^k (1-based k).
    pub fn d_of_generator(&self, k: u8) -> &Form {
        &self.d_coframe[usize::from(k) - 1]
    }

    pub fn differentials(&self) -> &[Form] {
        &self.d_coframe
    }

    /// Structure constant c^k_{ij} with [E_i, E_j] = sum_k c^k_{ij} E_k,
    /// antisymmetric in (i, j).
    pub fn structure_constant(&self, k: u8, i: u8, j: u8) -> CScalar {
        if i == j {
            return CScalar::zero();
        }
        let (lo, hi, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        let mask = MultiIndex::from_indices(&[lo, hi]).expect("distinct indices");
        let c = -self.d_of_generator(k).coeff(mask);
        if flip {
            -c
        } else {
            c
        }
    }

    /// The bracket [E_i, E_j] as a coefficient vector over the frame.
    pub fn bracket(&self, i: u8, j: u8) -> Vec<CScalar> {
        (1..=self.n).map(|k| self.structure_constant(k, i, j)).collect()
    }

    /// The Chevalley-Eilenberg differential: the unique antiderivation
    /// extending the coframe differentials, with d(constants) = 0.
    pub fn ce_d(&self, phi: &Form) -> Result<Form, LieError> {
        if phi.dimension() != self.n {
            return Err(LieError::Exterior(ExteriorError::DimensionMismatch {
                left: self.n,
                right: phi.dimension(),
            }));
        }
        let mut out = Form::zero(self.n);
        for (m, c) in phi.terms() {
            for (pos, i) in m.indices().enumerate() {
                // d(e^{i1..ik}) = sum_j (-1)^{j-1} de^{ij} ^ e^{i1..^ij..ik}
                let mut coeff = c.clone();
                if pos % 2 == 1 {
                    coeff = -coeff;
                }
                let rest = Form::monomial(self.n, m.remove(i), coeff)?;
                let piece = self.d_of_generator(i).wedge(&rest)?;
                out = out.add(&piece)?;
            }
        }
        Ok(out)
    }

    /// True iff d(de^k) = 0 for every generator (the Jacobi identity).
    pub fn d_squared_check(&self) -> bool {
        (1..=self.n).all(|k| {
            self.ce_d(self.d_of_generator(k)).map(|f| f.is_zero()).unwrap_or(false)
        })
    }

    /// True iff tr(ad_{E_i}) = sum_k c^k_{ik} vanishes for every i.
    pub fn unimodular_check(&self) -> bool {
        (1..=self.n).all(|i| {
            let mut trace = CScalar::zero();
            for k in 1..=self.n {
                trace = trace + self.structure_constant(k, i, k);
            }
            trace.is_zero()
        })
    }

    /// The differential restricted to k-forms, as an operator on the
    /// monomial basis.
    pub fn d_operator(&self, k: usize) -> Result<FormOperator, LieError> {
        let basis = self.monomial_basis(k);
        FormOperator::from_map(basis, |f| {
            Ok(self.ce_d(f).expect("basis forms share the coframe dimension"))
        })
        .map_err(LieError::from)
    }

    /// dim H^k = dim ker(d on k-forms) - rank(d on (k-1)-forms).
    pub fn ce_cohomology_dim(&self, k: usize) -> Result<usize, LieError> {
        if k > usize::from(self.n) {
            return Err(LieError::GradeOutOfRange { k, n: self.n });
        }
        let kernel_dim = self.d_operator(k)?.kernel().len();
        let rank_below = if k == 0 { 0 } else { self.d_operator(k - 1)?.rank() };
        Ok(kernel_dim - rank_below)
    }

    /// Invariant Betti numbers b_0..b_n.
    pub fn betti_vector(&self) -> Result<Vec<usize>, LieError> {
        (0..=usize::from(self.n)).map(|k| self.ce_cohomology_dim(k)).collect()
    }

    fn monomial_basis(&self, k: usize) -> Vec<Form> {
        basis_of_degree(self.n, k)
            .into_iter()
            .map(|m| Form::monomial(self.n, m, CScalar::one()).expect("basis fits"))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Salamon-notation parser and renderer.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<Token>, LieError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut pos = 0usize;
    while pos < chars.len() {
        let c = chars[pos];
        match c {
            ' ' | '\t' | '\n' | '\r' => pos += 1,
            '0'..='9' => {
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                tokens.push(Token::Num(chars[start..pos].iter().collect()));
            }
            '+' => {
                pos += 1;
                tokens.push(Token::Plus);
            }
            // ASCII hyphen and the unicode minus sign both mean minus.
            '-' | '\u{2212}' => {
                pos += 1;
                tokens.push(Token::Minus);
            }
            // '*' and the middle/centered dots all mean multiplication.
            '*' | '\u{00B7}' | '\u{22C5}' => {
                pos += 1;
                tokens.push(Token::Star);
            }
            '/' => {
                pos += 1;
                tokens.push(Token::Slash);
            }
            '^' => {
                pos += 1;
                tokens.push(Token::Caret);
            }
            '(' => {
                pos += 1;
                tokens.push(Token::LParen);
            }
            ')' => {
                pos += 1;
                tokens.push(Token::RParen);
            }
            '{' => {
                pos += 1;
                tokens.push(Token::LBrace);
            }
            '}' => {
                pos += 1;
                tokens.push(Token::RBrace);
            }
            ',' => {
                pos += 1;
                tokens.push(Token::Comma);
            }
            c if c.is_alphabetic() => {
                // Greedy identifier run, except that an 'e' directly before
                // an index pair is the monomial marker and starts its own
                // token: "λe52" lexes as Ident("λ"), Ident("e"), Num("52").
                let marks_monomial = |at: usize| {
                    chars[at] == 'e'
                        && matches!(chars.get(at + 1), Some(d) if d.is_ascii_digit() || *d == '^' || *d == '{')
                };
                let start = pos;
                pos += 1;
                while pos < chars.len() && chars[pos].is_alphabetic() && !marks_monomial(pos) {
                    pos += 1;
                }
                tokens.push(Token::Ident(chars[start..pos].iter().collect()));
            }
            other => {
                return Err(LieError::Malformed(other.to_string(), "unexpected character"));
            }
        }
    }
    Ok(tokens)
}

/// Split a token slice at top-level occurrences of the given separator.
fn split_top_level(tokens: &[Token], sep: &Token) -> Vec<Vec<Token>> {
    let mut parts = vec![Vec::new()];
    let mut depth = 0i32;
    for t in tokens {
        match t {
            Token::LParen | Token::LBrace => depth += 1,
            Token::RParen | Token::RBrace => depth -= 1,
            _ => {}
        }
        if depth == 0 && t == sep {
            parts.push(Vec::new());
        } else {
            parts.last_mut().expect("nonempty").push(t.clone());
        }
    }
    parts
}

/// Split a term list "a + b - c" into (sign, term tokens) pieces at
/// top-level plus/minus.
fn split_signed_terms(tokens: &[Token]) -> Vec<(i8, Vec<Token>)> {
    let mut terms: Vec<(i8, Vec<Token>)> = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    let mut sign: i8 = 1;
    let mut depth = 0i32;
    let mut at_term_start = true;
    for t in tokens {
        match t {
            Token::LParen | Token::LBrace => depth += 1,
            Token::RParen | Token::RBrace => depth -= 1,
            _ => {}
        }
        if depth == 0 && at_term_start && matches!(t, Token::Plus | Token::Minus) {
            // Leading sign of the term (possibly repeated: "--" etc.).
            if matches!(t, Token::Minus) {
                sign = -sign;
            }
            continue;
        }
        if depth == 0 && !at_term_start && matches!(t, Token::Plus | Token::Minus) {
            terms.push((sign, std::mem::take(&mut current)));
            sign = if matches!(t, Token::Minus) { -1 } else { 1 };
            at_term_start = true;
            continue;
        }
        current.push(t.clone());
        at_term_start = false;
    }
    if !current.is_empty() {
        terms.push((sign, current));
    }
    terms
}

/// Recursive-descent evaluator for coefficient expressions over the
/// complexified rationals: numbers, bound parameters, the imaginary unit
/// "i", + - * / and parentheses.
struct ExprParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    params: &'a Params,
}

impl<'a> ExprParser<'a> {
    fn parse(tokens: &'a [Token], params: &'a Params) -> Result<CScalar, LieError> {
        let mut p = ExprParser { tokens, pos: 0, params };
        let v = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(LieError::Malformed(
                format!("{:?}", &p.tokens[p.pos..]),
                "trailing tokens in coefficient",
            ));
        }
        Ok(v)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<CScalar, LieError> {
        let mut acc = self.product()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.pos += 1;
                    acc = acc + self.product()?;
                }
                Token::Minus => {
                    self.pos += 1;
                    acc = acc - self.product()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<CScalar, LieError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc * self.atom()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let rhs = self.atom()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|_| LieError::CoefficientDivisionByZero)?;
                }
                // Juxtaposition: "(1-λ)λ" or "2λ" multiply.
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    acc = acc * self.atom()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<CScalar, LieError> {
        match self.next() {
            Some(Token::Num(digits)) => {
                let value: Rational = digits
                    .parse::<Rational>()
                    .map_err(|_| LieError::Malformed(digits, "bad number"))?;
                Ok(CScalar::from_rational(value))
            }
            Some(Token::Ident(name)) => {
                if name == "i" {
                    return Ok(CScalar::i());
                }
                let value = self
                    .params
                    .get(&name)
                    .ok_or_else(|| LieError::UnboundParameter(name.clone()))?;
                Ok(CScalar::from_rational(value.clone()))
            }
            Some(Token::Minus) => Ok(-self.atom()?),
            Some(Token::Plus) => self.atom(),
            Some(Token::LParen) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(v),
                    _ => Err(LieError::Malformed("(".into(), "unbalanced parenthesis")),
                }
            }
            other => Err(LieError::Malformed(
                format!("{other:?}"),
                "expected a number, parameter or parenthesized expression",
            )),
        }
    }
}

/// Locate the index-pair monomial at the end of a term and return
/// (coefficient tokens, index digits).
fn split_term(tokens: &[Token]) -> Result<(&[Token], &str), LieError> {
    let text = || format!("{tokens:?}");
    let mut end = tokens.len();
    if end == 0 {
        return Err(LieError::Malformed(String::new(), "empty term"));
    }
    // Optional closing brace.
    if matches!(tokens[end - 1], Token::RBrace) {
        end -= 1;
    }
    let Some(Token::Num(digits)) = tokens.get(end.wrapping_sub(1)) else {
        return Err(LieError::Malformed(text(), "term does not end in an index pair"));
    };
    end -= 1;
    let mut start = end;
    // Optional '{', '^', and 'e' marker before the digits.
    if start > 0 && matches!(tokens[start - 1], Token::LBrace) {
        start -= 1;
    }
    if start > 0 && matches!(tokens[start - 1], Token::Caret) {
        start -= 1;
    }
    if start > 0 {
        if let Token::Ident(name) = &tokens[start - 1] {
            if name == "e" {
                start -= 1;
            }
        }
    }
    let mut coeff_end = start;
    // A '*' or implicit juxtaposition separates coefficient and monomial.
    if coeff_end > 0 && matches!(tokens[coeff_end - 1], Token::Star) {
        coeff_end -= 1;
    }
    Ok((&tokens[..coeff_end], digits))
}

fn parse_term(
    n: u8,
    sign: i8,
    tokens: &[Token],
    params: &Params,
) -> Result<Form, LieError> {
    let (coeff_tokens, digits) = split_term(tokens)?;
    if digits.len() != 2 {
        return Err(LieError::Malformed(
            digits.to_owned(),
            "index pairs must have exactly two digits",
        ));
    }
    let indices: Vec<u8> = digits.bytes().map(|b| b - b'0').collect();
    for &i in &indices {
        if i == 0 || i > n {
            return Err(LieError::Exterior(ExteriorError::IndexOutOfRange { index: i, n }));
        }
    }
    let (mask, perm_sign) = sort_sign(&indices).ok_or_else(|| {
        LieError::RepeatedIndex(digits.to_owned())
    })?;
    let mut coeff = if coeff_tokens.is_empty() {
        CScalar::one()
    } else {
        ExprParser::parse(coeff_tokens, params)?
    };
    if i64::from(sign) * i64::from(perm_sign) < 0 {
        coeff = -coeff;
    }
    Ok(Form::monomial(n, mask, coeff)?)
}

/// Parse one form expression like "e61+λe52+(1-λ)e34" over an n-dim coframe.
pub fn parse_form(text: &str, n: u8, params: &Params) -> Result<Form, LieError> {
    let tokens = tokenize(text)?;
    parse_component(&tokens, n, params)
}

fn parse_component(tokens: &[Token], n: u8, params: &Params) -> Result<Form, LieError> {
    if tokens.is_empty() {
        return Err(LieError::Malformed(String::new(), "empty component"));
    }
    // A lone "0" denotes the zero form.
    if let [Token::Num(z)] = tokens {
        if z == "0" {
            return Ok(Form::zero(n));
        }
    }
    let mut acc = Form::zero(n);
    for (sign, term) in split_signed_terms(tokens) {
        acc = acc.add(&parse_term(n, sign, &term, params)?)?;
    }
    Ok(acc)
}

/// Parse a full Salamon spec "(c1,...,cn)" into a Lie algebra; n is the
/// component count. Indices are single digits, so n <= 9.
pub fn parse_salamon(text: &str, params: &Params) -> Result<LieAlgebra, LieError> {
    let trimmed = text.trim();
    let inner = match (trimmed.strip_prefix('('), trimmed.strip_suffix(')')) {
        (Some(rest), Some(_)) => {
            // Only strip if the outer parens match each other.
            let candidate = &rest[..rest.len() - 1];
            if parens_balanced(candidate) {
                candidate
            } else {
                trimmed
            }
        }
        _ => trimmed,
    };
    let tokens = tokenize(inner)?;
    let components = split_top_level(&tokens, &Token::Comma);
    let n = components.len();
    if n > 9 {
        return Err(LieError::NotationDimension(n));
    }
    let n = n as u8;
    let d_coframe = components
        .iter()
        .map(|c| parse_component(c, n, params))
        .collect::<Result<Vec<_>, _>>()?;
    LieAlgebra::new(n, d_coframe)
}

fn parens_balanced(text: &str) -> bool {
    let mut depth = 0i32;
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// Canonical text for an algebra: "(0,0,0,12,13,23)"-style, bare digit
/// pairs with exact coefficients. Rational (and rational + i) coefficients
/// round-trip through [`parse_salamon`]; quadratic-irrational ones render
/// readably but are not re-parseable.
pub fn render_salamon(g: &LieAlgebra) -> String {
    let mut out = String::from("(");
    for k in 1..=g.dimension() {
        if k > 1 {
            out.push(',');
        }
        let f = g.d_of_generator(k);
        if f.is_zero() {
            out.push('0');
            continue;
        }
        let mut first = true;
        for (m, c) in f.terms() {
            let (neg, body) = salamon_term(m, c);
            if first {
                let _ = write!(out, "{}{}", if neg { "-" } else { "" }, body);
                first = false;
            } else {
                let _ = write!(out, "{}{}", if neg { "-" } else { "+" }, body);
            }
        }
    }
    out.push(')');
    out
}

/// One Salamon term as (is_negative, body): bare digit pairs with an
/// optional coefficient prefix.
fn salamon_term(m: MultiIndex, c: &CScalar) -> (bool, String) {
    let pair: String = m.indices().map(|i| char::from(b'0' + i)).collect();
    if *c == CScalar::one() {
        return (false, pair);
    }
    if *c == CScalar::from_int(-1) {
        return (true, pair);
    }
    let text = c.to_string();
    if text.contains(['+', ' ']) {
        return (false, format!("({text})*{pair}"));
    }
    match text.strip_prefix('-') {
        Some(rest) => (true, format!("{rest}*{pair}")),
        None => (false, format!("{text}*{pair}")),
    }
}
