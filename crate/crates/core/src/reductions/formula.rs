use crate::error::{Error, Result};

/// CNF formula over variables `1..=num_vars`; literals are signed variable
/// indices as in DIMACS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::parse(format!("clause {} is empty", i + 1)));
            }
            if let Some(&lit) = clause
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars)
            {
                return Err(Error::parse(format!(
                    "literal {lit} in clause {} is out of range",
                    i + 1
                )));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Number of clauses satisfied by `assignment[v - 1]`.
    pub fn satisfied_by(&self, assignment: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|c| {
                c.iter()
                    .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
            })
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Prenex QBF; the prefix binds every variable of the matrix exactly once,
/// outermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbfFormula {
    prefix: Vec<(Quantifier, usize)>,
    matrix: CnfFormula,
}

impl QbfFormula {
    pub fn new(prefix: Vec<(Quantifier, usize)>, matrix: CnfFormula) -> Result<Self> {
        let mut bound = vec![false; matrix.num_vars() + 1];
        for &(_, v) in &prefix {
            if v == 0 || v > matrix.num_vars() {
                return Err(Error::parse(format!("quantified variable {v} is out of range")));
            }
            if std::mem::replace(&mut bound[v], true) {
                return Err(Error::parse(format!("variable {v} is quantified twice")));
            }
        }
        if let Some(v) = (1..=matrix.num_vars()).find(|&v| !bound[v]) {
            return Err(Error::parse(format!("variable {v} is not quantified")));
        }
        Ok(QbfFormula { prefix, matrix })
    }

    pub fn prefix(&self) -> &[(Quantifier, usize)] {
        &self.prefix
    }

    pub fn matrix(&self) -> &CnfFormula {
        &self.matrix
    }

    pub fn quantifier_of(&self, var: usize) -> Quantifier {
        self.prefix
            .iter()
            .find(|&&(_, v)| v == var)
            .map(|&(q, _)| q)
            .expect("every variable is quantified")
    }
}

struct Dimacs {
    num_vars: usize,
    prefix: Vec<(Quantifier, usize)>,
    clauses: Vec<Vec<i32>>,
}

fn parse_dimacs_lines(text: &str, allow_prefix: bool) -> Result<Dimacs> {
    let mut header: Option<(usize, usize)> = None;
    let mut prefix = Vec::new();
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        let bad = |what: &str| Error::parse(format!("line {}: {what}", lineno + 1));
        let mut tokens = line.split_whitespace();
        if line.starts_with('p') {
            let fields: Vec<&str> = tokens.collect();
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(bad("expected 'p cnf <vars> <clauses>'"));
            }
            let vars = fields[2].parse().map_err(|_| bad("bad variable count"))?;
            let count = fields[3].parse().map_err(|_| bad("bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        if header.is_none() {
            return Err(bad("clause before the 'p cnf' header"));
        }
        if line.starts_with('e') || line.starts_with('a') {
            if !allow_prefix {
                return Err(bad("quantifier line in a plain CNF file"));
            }
            if !clauses.is_empty() || !current.is_empty() {
                return Err(bad("quantifier line after the first clause"));
            }
            let q = if tokens.next() == Some("e") {
                Quantifier::Exists
            } else {
                Quantifier::Forall
            };
            for tok in tokens {
                let v: usize = tok.parse().map_err(|_| bad("bad variable"))?;
                if v == 0 {
                    break;
                }
                prefix.push((q, v));
            }
            continue;
        }
        for tok in tokens {
            let lit: i32 = tok.parse().map_err(|_| bad("bad literal"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let (num_vars, _) = header.ok_or_else(|| Error::parse("missing 'p cnf' header"))?;
    Ok(Dimacs {
        num_vars,
        prefix,
        clauses,
    })
}

/// Parses a DIMACS CNF file.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let d = parse_dimacs_lines(text, false)?;
    CnfFormula::new(d.num_vars, d.clauses)
}

/// Parses a QDIMACS file. Variables missing from the prefix are bound
/// existentially at the outermost level.
pub fn parse_qdimacs(text: &str) -> Result<QbfFormula> {
    let d = parse_dimacs_lines(text, true)?;
    let matrix = CnfFormula::new(d.num_vars, d.clauses)?;
    let mut bound = vec![false; d.num_vars + 1];
    for &(_, v) in &d.prefix {
        if v <= d.num_vars {
            bound[v] = true;
        }
    }
    let mut prefix: Vec<(Quantifier, usize)> = (1..=d.num_vars)
        .filter(|&v| !bound[v])
        .map(|v| (Quantifier::Exists, v))
        .collect();
    prefix.extend(d.prefix);
    QbfFormula::new(prefix, matrix)
}

fn render_clauses(out: &mut String, phi: &CnfFormula) {
    for clause in phi.clauses() {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
}

pub fn render_dimacs(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.num_vars(), phi.num_clauses());
    render_clauses(&mut out, phi);
    out
}

/// QDIMACS text with one quantifier line per block of equal quantifiers.
pub fn render_qdimacs(phi: &QbfFormula) -> String {
    let m = phi.matrix();
    let mut out = format!("p cnf {} {}\n", m.num_vars(), m.num_clauses());
    let mut blocks: Vec<(Quantifier, Vec<usize>)> = Vec::new();
    for &(q, v) in phi.prefix() {
        match blocks.last_mut() {
            Some((last, vars)) if *last == q => vars.push(v),
            _ => blocks.push((q, vec![v])),
        }
    }
    for (q, vars) in blocks {
        out.push(if q == Quantifier::Exists { 'e' } else { 'a' });
        for v in vars {
            out.push_str(&format!(" {v}"));
        }
        out.push_str(" 0\n");
    }
    render_clauses(&mut out, m);
    out
}
