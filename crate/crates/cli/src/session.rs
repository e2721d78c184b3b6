//! Session files: named rings, submodules, primes and decomposition
//! certificates.
//!
//! A session file fixes one polynomial ring over `Q` and one free module, then
//! binds names to submodules, prime ideals, primary components, decomposition
//! certificates and oracle fixtures.  Commands refer to those names.  The
//! grammar:
//!
//! ```text
//! session  := ring rank stmt*
//! ring     := "ring" "Q" "[" ident ("," ident)* "]" ";"
//! rank     := "free" INT ";"
//! stmt     := moddef | primedef | primarydef | decompdef | fixture
//! moddef   := ident "=" "[" vector ("," vector)* "]" ";"
//! primedef := "prime" ident "=" "ideal" "(" poly ("," poly)* ")" ";"
//! primarydef := "primary" ident "=" "[" vector ("," vector)* "]" "with" ident ";"
//! decompdef  := "decomp" ident ":" ident ("," ident)* ";"
//! fixture    := "fixture" ident "uses" ident ";"
//! ```
//!
//! Modules, primes and primary components share one namespace; decomposition
//! certificates live in a second namespace keyed by their target's name, so
//! `decomp N: Q1, Q2;` certifies the already-defined submodule `N`.  Every
//! name must be defined before use and `#` starts a line comment.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use envrad_core::{
    parse_vector_tokens, Decomposition, DecompositionOracle, FreeModule, Ideal, Lexer,
    ModuleVector, ParseError, PolyRing, Polynomial, PrimaryComponent, Submodule,
    VerificationConfig,
};

/// One declaration, kept in source order so a session can be re-rendered.
#[derive(Debug, Clone)]
pub enum Item {
    /// `name = [v1, ..., vk];`
    Module { name: String, sub: Submodule },
    /// `prime name = ideal(f1, ..., fk);`
    Prime { name: String, ideal: Ideal },
    /// `primary name = [v1, ..., vk] with prime;`
    Primary {
        name: String,
        sub: Submodule,
        prime: String,
    },
    /// `decomp target: c1, ..., ck;`
    Decomp {
        target: String,
        components: Vec<String>,
    },
    /// `fixture module uses decomp;`
    Fixture { module: String, decomp: String },
}

/// A decomposition certificate resolved into core types, with the session
/// names of its components and primes preserved for diagnostics.
#[derive(Debug, Clone)]
pub struct DecompositionView {
    pub decomposition: Decomposition,
    pub component_names: Vec<String>,
    pub prime_names: Vec<String>,
}

/// A fully parsed session file.
#[derive(Debug)]
pub struct Session {
    ring: Arc<PolyRing>,
    module: Arc<FreeModule>,
    items: Vec<Item>,
    values: HashMap<String, usize>,
    decomps: HashMap<String, usize>,
}

impl Session {
    /// Parses a complete session file.
    pub fn parse(src: &str) -> Result<Session, ParseError> {
        let mut lx = Lexer::new(src)?;

        lx.expect_keyword("ring")?;
        lx.expect_keyword("Q")?;
        lx.expect_sym('[')?;
        let mut vars: Vec<String> = Vec::new();
        loop {
            let (name, line, col) = lx.expect_ident()?;
            if is_basis_name(&name) {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("variable name `{name}` shadows a basis symbol"),
                ));
            }
            if vars.contains(&name) {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("duplicate variable `{name}`"),
                ));
            }
            vars.push(name);
            if !lx.eat_sym(',') {
                break;
            }
        }
        lx.expect_sym(']')?;
        lx.expect_sym(';')?;

        lx.expect_keyword("free")?;
        let (rank, line, col) = lx.expect_int()?;
        let rank: usize = rank
            .try_into()
            .ok()
            .filter(|r| (1..=64).contains(r))
            .ok_or_else(|| ParseError::new(line, col, "rank must be between 1 and 64"))?;
        lx.expect_sym(';')?;

        let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        let ring = PolyRing::new(&var_refs);
        let module = FreeModule::new(&ring, rank);
        let mut session = Session {
            ring,
            module,
            items: Vec::new(),
            values: HashMap::new(),
            decomps: HashMap::new(),
        };

        while !lx.at_eof() {
            session.parse_stmt(&mut lx)?;
        }
        Ok(session)
    }

    fn parse_stmt(&mut self, lx: &mut Lexer) -> Result<(), ParseError> {
        if lx.eat_keyword("prime") {
            let (name, line, col) = lx.expect_ident()?;
            self.check_fresh_value(&name, line, col)?;
            lx.expect_sym('=')?;
            lx.expect_keyword("ideal")?;
            lx.expect_sym('(')?;
            let mut gens: Vec<Polynomial> = Vec::new();
            loop {
                gens.push(envrad_core::parse_polynomial_tokens(lx, &self.ring)?);
                if !lx.eat_sym(',') {
                    break;
                }
            }
            lx.expect_sym(')')?;
            lx.expect_sym(';')?;
            let ideal = Ideal::new(&self.ring, gens);
            self.values.insert(name.clone(), self.items.len());
            self.items.push(Item::Prime { name, ideal });
        } else if lx.eat_keyword("primary") {
            let (name, line, col) = lx.expect_ident()?;
            self.check_fresh_value(&name, line, col)?;
            lx.expect_sym('=')?;
            let gens = self.parse_vector_list(lx)?;
            lx.expect_keyword("with")?;
            let (prime, pline, pcol) = lx.expect_ident()?;
            if self.prime(&prime).is_none() {
                return Err(ParseError::new(
                    pline,
                    pcol,
                    format!("`{prime}` is not a defined prime"),
                ));
            }
            lx.expect_sym(';')?;
            let sub = Submodule::new(&self.module, gens);
            self.values.insert(name.clone(), self.items.len());
            self.items.push(Item::Primary { name, sub, prime });
        } else if lx.eat_keyword("decomp") {
            let (target, line, col) = lx.expect_ident()?;
            if self.submodule(&target).is_none() {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("`{target}` is not a defined submodule"),
                ));
            }
            if self.decomps.contains_key(&target) {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("decomposition for `{target}` already defined"),
                ));
            }
            lx.expect_sym(':')?;
            let mut components: Vec<String> = Vec::new();
            loop {
                let (comp, cline, ccol) = lx.expect_ident()?;
                if !matches!(self.value(&comp), Some(Item::Primary { .. })) {
                    return Err(ParseError::new(
                        cline,
                        ccol,
                        format!("`{comp}` is not a defined primary component"),
                    ));
                }
                components.push(comp);
                if !lx.eat_sym(',') {
                    break;
                }
            }
            lx.expect_sym(';')?;
            self.decomps.insert(target.clone(), self.items.len());
            self.items.push(Item::Decomp { target, components });
        } else if lx.eat_keyword("fixture") {
            let (module, line, col) = lx.expect_ident()?;
            if self.submodule(&module).is_none() {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("`{module}` is not a defined submodule"),
                ));
            }
            lx.expect_keyword("uses")?;
            let (decomp, dline, dcol) = lx.expect_ident()?;
            if !self.decomps.contains_key(&decomp) {
                return Err(ParseError::new(
                    dline,
                    dcol,
                    format!("`{decomp}` has no decomposition"),
                ));
            }
            lx.expect_sym(';')?;
            self.items.push(Item::Fixture { module, decomp });
        } else {
            let (name, line, col) = lx.expect_ident()?;
            self.check_fresh_value(&name, line, col)?;
            lx.expect_sym('=')?;
            let gens = self.parse_vector_list(lx)?;
            lx.expect_sym(';')?;
            let sub = Submodule::new(&self.module, gens);
            self.values.insert(name.clone(), self.items.len());
            self.items.push(Item::Module { name, sub });
        }
        Ok(())
    }

    fn parse_vector_list(&self, lx: &mut Lexer) -> Result<Vec<ModuleVector>, ParseError> {
        lx.expect_sym('[')?;
        let mut gens: Vec<ModuleVector> = Vec::new();
        loop {
            gens.push(parse_vector_tokens(lx, &self.module)?);
            if !lx.eat_sym(',') {
                break;
            }
        }
        lx.expect_sym(']')?;
        Ok(gens)
    }

    fn check_fresh_value(&self, name: &str, line: usize, col: usize) -> Result<(), ParseError> {
        if self.values.contains_key(name) {
            return Err(ParseError::new(
                line,
                col,
                format!("duplicate name `{name}`"),
            ));
        }
        Ok(())
    }

    /// The session's polynomial ring.
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// The session's ambient free module.
    pub fn module(&self) -> &Arc<FreeModule> {
        &self.module
    }

    /// All declarations in source order.
    pub fn items(&self) -> &[Item] {
        &self.items
    }

    fn value(&self, name: &str) -> Option<&Item> {
        self.values.get(name).map(|&i| &self.items[i])
    }

    /// Looks up a name bound to a submodule (a module or primary definition).
    pub fn submodule(&self, name: &str) -> Option<&Submodule> {
        match self.value(name)? {
            Item::Module { sub, .. } | Item::Primary { sub, .. } => Some(sub),
            _ => None,
        }
    }

    /// Looks up a name bound to a prime ideal.
    pub fn prime(&self, name: &str) -> Option<&Ideal> {
        match self.value(name)? {
            Item::Prime { ideal, .. } => Some(ideal),
            _ => None,
        }
    }

    /// Resolves the decomposition certificate registered for `target`.
    pub fn decomposition(&self, target: &str) -> Option<DecompositionView> {
        let &idx = self.decomps.get(target)?;
        let Item::Decomp { components, .. } = &self.items[idx] else {
            return None;
        };
        self.build_view(target, components)
    }

    fn build_view(&self, target: &str, components: &[String]) -> Option<DecompositionView> {
        let target_sub = self.submodule(target)?.clone();
        let mut comps = Vec::with_capacity(components.len());
        let mut prime_names = Vec::with_capacity(components.len());
        for name in components {
            let Some(Item::Primary { sub, prime, .. }) = self.value(name) else {
                return None;
            };
            let prime_ideal = self.prime(prime)?.clone();
            comps.push(PrimaryComponent::new(sub.clone(), prime_ideal, name.clone()));
            prime_names.push(prime.clone());
        }
        Some(DecompositionView {
            decomposition: Decomposition::new(target_sub, comps),
            component_names: components.to_vec(),
            prime_names,
        })
    }

    /// Builds the decomposition oracle from this session's fixtures (plus an
    /// optional second session's), on top of automatic monomial decomposition.
    ///
    /// Every fixture is re-verified as it is added, so an invalid certificate
    /// is rejected here rather than silently trusted later.
    pub fn build_oracle(
        &self,
        extra: Option<&Session>,
        config: &VerificationConfig,
    ) -> envrad_core::Result<DecompositionOracle> {
        let mut oracle = DecompositionOracle::new(true);
        self.add_fixtures(&mut oracle, config)?;
        if let Some(extra) = extra {
            extra.add_fixtures(&mut oracle, config)?;
        }
        Ok(oracle)
    }

    fn add_fixtures(
        &self,
        oracle: &mut DecompositionOracle,
        config: &VerificationConfig,
    ) -> envrad_core::Result<()> {
        for item in &self.items {
            let Item::Fixture { module, decomp } = item else {
                continue;
            };
            let Item::Decomp { components, .. } = &self.items[self.decomps[decomp]] else {
                unreachable!("decomp table points at a decomp item");
            };
            // Re-target the certificate: `fixture A uses D;` claims D's
            // components also decompose A, which add_fixture verifies.
            let view = self
                .build_view(module, components)
                .expect("fixture names were resolved during parsing");
            oracle.add_fixture(view.decomposition, config)?;
        }
        Ok(())
    }

    /// Renders the session back to its canonical source text.
    ///
    /// Parsing the result reproduces the same session, with every generator
    /// list replaced by its reduced canonical basis.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ring Q[{}];", self.ring.var_names().join(", "));
        let _ = writeln!(out, "free {};", self.module.rank());
        for item in &self.items {
            match item {
                Item::Module { name, sub } => {
                    let _ = writeln!(out, "{name} = [{}];", render_submodule_inline(sub));
                }
                Item::Prime { name, ideal } => {
                    let _ = writeln!(out, "prime {name} = ideal({});", render_ideal_inline(ideal));
                }
                Item::Primary { name, sub, prime } => {
                    let _ = writeln!(
                        out,
                        "primary {name} = [{}] with {prime};",
                        render_submodule_inline(sub)
                    );
                }
                Item::Decomp { target, components } => {
                    let _ = writeln!(out, "decomp {target}: {};", components.join(", "));
                }
                Item::Fixture { module, decomp } => {
                    let _ = writeln!(out, "fixture {module} uses {decomp};");
                }
            }
        }
        out
    }
}

/// Identifiers of the form `e<digits>` name basis vectors inside expressions.
fn is_basis_name(name: &str) -> bool {
    let rest = match name.strip_prefix('e') {
        Some(rest) => rest,
        None => return false,
    };
    !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())
}

fn render_submodule_inline(sub: &Submodule) -> String {
    let basis = sub.reduced_basis();
    if basis.is_empty() {
        return "0".to_string();
    }
    basis
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_ideal_inline(ideal: &Ideal) -> String {
    let polys = ideal.reduced_polys();
    if polys.is_empty() {
        return "0".to_string();
    }
    polys
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
