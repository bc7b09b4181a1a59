//! Ordering schemes: the rule assigning an alphabet permutation to every
//! context string.
//!
//! A context is the longest common prefix of two rotations being compared;
//! the scheme decides which alphabet order breaks the tie. Contexts are
//! symbol-rank strings (see [`crate::alphabet`]).
//!
//! Schemes have a line-based textual form used by the CLI and embedded in
//! transform containers:
//!
//! ```text
//! kind=local k=1
//! alphabet=abc
//! default=abc
//! ctx:=bca        # empty context
//! ctx:a=bac
//! ```
//!
//! Permutations are written as the alphabet symbols smallest-first. Bytes
//! outside the printable ASCII range (and the metacharacters `\`, `#`, `=`,
//! and space) are written as `\xHH` escapes so binary alphabets survive the
//! round trip. `#` starts a comment. The other kinds:
//!
//! ```text
//! kind=const pi=abc
//! kind=posmod k=3 pi0=cab pi1=bca pi2=bac
//! kind=pm base=bac default=+ parity=off   (followed by neg:CTX lines)
//! kind=pm base=abc parity=on
//! kind=explicit                            (followed by default= and ctx: lines)
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Permutation, Sym};
use crate::Error;

/// Sign rule for ± orderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PmRule {
    /// Sign is `-` exactly when the context length is odd. With the standard
    /// base order this is the alternating BWT.
    Parity,
    /// A default sign plus a finite set of contexts carrying the opposite
    /// sign.
    Negated {
        default_reversed: bool,
        contexts: HashSet<Vec<Sym>>,
    },
}

/// The five scheme variants.
#[derive(Debug, Clone)]
pub enum SchemeKind {
    /// One fixed permutation for every context (the classic BWT when it is
    /// the standard order).
    Constant { pi: Permutation },
    /// Permutation depends only on the context length modulo `k`.
    PositionMod { k: usize, perms: Vec<Permutation> },
    /// Every context resolves to a base permutation or its reversal.
    PlusMinus {
        base: Permutation,
        reversed: Permutation,
        rule: PmRule,
    },
    /// Permutation depends only on the last `min(k, |ctx|)` context symbols.
    Local {
        k: usize,
        default: Permutation,
        contexts: HashMap<Vec<Sym>, Permutation>,
    },
    /// Finite exact-context map with a default for everything else.
    Explicit {
        default: Permutation,
        contexts: HashMap<Vec<Sym>, Permutation>,
    },
}

/// An alphabet together with a rule resolving the permutation of any context.
#[derive(Debug, Clone)]
pub struct OrderingScheme {
    alphabet: Alphabet,
    kind: SchemeKind,
    /// Longest context key stored in an `Explicit` map or `Negated` set;
    /// lets `resolve` skip the hash lookup for longer contexts.
    max_ctx_len: usize,
}

impl OrderingScheme {
    fn build(alphabet: Alphabet, kind: SchemeKind) -> Result<Self, Error> {
        let sigma = alphabet.size();
        let check_perm = |p: &Permutation| -> Result<(), Error> {
            if p.len() == sigma {
                Ok(())
            } else {
                Err(Error::InvalidSymbol {
                    sym: p.len() as u32,
                    sigma,
                })
            }
        };
        let mut max_ctx_len = 0usize;
        match &kind {
            SchemeKind::Constant { pi } => check_perm(pi)?,
            SchemeKind::PositionMod { k, perms } => {
                if *k == 0 || perms.len() != *k {
                    return Err(Error::SchemeKind { expected: "posmod" });
                }
                perms.iter().try_for_each(check_perm)?;
            }
            SchemeKind::PlusMinus {
                base,
                reversed,
                rule,
            } => {
                check_perm(base)?;
                check_perm(reversed)?;
                if let PmRule::Negated { contexts, .. } = rule {
                    for ctx in contexts {
                        alphabet.check_syms(ctx)?;
                        max_ctx_len = max_ctx_len.max(ctx.len());
                    }
                }
            }
            SchemeKind::Local {
                k,
                default,
                contexts,
            } => {
                if *k == 0 {
                    return Err(Error::SchemeKind { expected: "local" });
                }
                check_perm(default)?;
                for (ctx, p) in contexts {
                    if ctx.len() > *k {
                        return Err(Error::SchemeKind { expected: "local" });
                    }
                    alphabet.check_syms(ctx)?;
                    check_perm(p)?;
                }
            }
            SchemeKind::Explicit { default, contexts } => {
                check_perm(default)?;
                for (ctx, p) in contexts {
                    alphabet.check_syms(ctx)?;
                    check_perm(p)?;
                    max_ctx_len = max_ctx_len.max(ctx.len());
                }
            }
        }
        Ok(OrderingScheme {
            alphabet,
            kind,
            max_ctx_len,
        })
    }

    pub fn constant(alphabet: Alphabet, pi: Permutation) -> Result<Self, Error> {
        Self::build(alphabet, SchemeKind::Constant { pi })
    }

    /// The classic BWT: standard order for every context.
    pub fn standard(alphabet: Alphabet) -> Self {
        let pi = Permutation::identity(alphabet.size());
        Self::build(alphabet, SchemeKind::Constant { pi }).expect("identity is valid")
    }

    pub fn position_mod(alphabet: Alphabet, perms: Vec<Permutation>) -> Result<Self, Error> {
        let k = perms.len();
        Self::build(alphabet, SchemeKind::PositionMod { k, perms })
    }

    /// The alternating BWT: standard order at even context lengths, reversed
    /// at odd ones, as a position-mod-2 scheme.
    pub fn alternating(alphabet: Alphabet) -> Self {
        Self::alternating_mod(alphabet, 2)
    }

    /// Position-mod-k scheme alternating standard/reversed standard order.
    /// `k = 1` is the classic BWT, `k = 2` the alternating BWT.
    pub fn alternating_mod(alphabet: Alphabet, k: usize) -> Self {
        let id = Permutation::identity(alphabet.size());
        let rev = id.reverse();
        let perms = (0..k.max(1))
            .map(|i| if i % 2 == 0 { id.clone() } else { rev.clone() })
            .collect();
        Self::build(alphabet, SchemeKind::PositionMod { k: k.max(1), perms })
            .expect("alternating perms are valid")
    }

    pub fn plus_minus(
        alphabet: Alphabet,
        base: Permutation,
        default_reversed: bool,
        negated: HashSet<Vec<Sym>>,
    ) -> Result<Self, Error> {
        let reversed = base.reverse();
        Self::build(
            alphabet,
            SchemeKind::PlusMinus {
                base,
                reversed,
                rule: PmRule::Negated {
                    default_reversed,
                    contexts: negated,
                },
            },
        )
    }

    /// ± scheme under the parity rule: reversed exactly at odd context
    /// lengths. With the standard base this equals the alternating BWT.
    pub fn pm_parity(alphabet: Alphabet, base: Permutation) -> Result<Self, Error> {
        let reversed = base.reverse();
        Self::build(
            alphabet,
            SchemeKind::PlusMinus {
                base,
                reversed,
                rule: PmRule::Parity,
            },
        )
    }

    pub fn local(
        alphabet: Alphabet,
        k: usize,
        default: Permutation,
        contexts: HashMap<Vec<Sym>, Permutation>,
    ) -> Result<Self, Error> {
        Self::build(
            alphabet,
            SchemeKind::Local {
                k,
                default,
                contexts,
            },
        )
    }

    pub fn explicit(
        alphabet: Alphabet,
        default: Permutation,
        contexts: HashMap<Vec<Sym>, Permutation>,
    ) -> Result<Self, Error> {
        Self::build(alphabet, SchemeKind::Explicit { default, contexts })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> &SchemeKind {
        &self.kind
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.size()
    }

    /// Order `k` if this is a local scheme.
    pub fn local_k(&self) -> Option<usize> {
        match &self.kind {
            SchemeKind::Local { k, .. } => Some(*k),
            _ => None,
        }
    }

    pub fn is_plus_minus(&self) -> bool {
        matches!(self.kind, SchemeKind::PlusMinus { .. })
    }

    /// Permutation assigned to `ctx`. Context symbols must belong to the
    /// alphabet.
    pub fn resolve(&self, ctx: &[Sym]) -> Result<&Permutation, Error> {
        self.alphabet.check_syms(ctx)?;
        Ok(self.resolve_unchecked(ctx))
    }

    /// As [`resolve`](Self::resolve) for contexts already known to be valid
    /// (anything sliced out of an encoded text). Skips symbol validation so
    /// hot paths stay O(k) for local schemes.
    pub(crate) fn resolve_unchecked(&self, ctx: &[Sym]) -> &Permutation {
        match &self.kind {
            SchemeKind::Constant { pi } => pi,
            SchemeKind::PositionMod { k, perms } => &perms[ctx.len() % k],
            SchemeKind::PlusMinus { base, reversed, .. } => {
                if self.pm_reversed(ctx) {
                    reversed
                } else {
                    base
                }
            }
            SchemeKind::Local {
                k,
                default,
                contexts,
            } => {
                let key = &ctx[ctx.len().saturating_sub(*k)..];
                contexts.get(key).unwrap_or(default)
            }
            SchemeKind::Explicit { default, contexts } => {
                if ctx.len() <= self.max_ctx_len {
                    contexts.get(ctx).unwrap_or(default)
                } else {
                    default
                }
            }
        }
    }

    /// Whether a ± scheme resolves `ctx` to the reversed base order.
    /// Must only be called on `PlusMinus` schemes.
    pub(crate) fn pm_reversed(&self, ctx: &[Sym]) -> bool {
        match &self.kind {
            SchemeKind::PlusMinus { rule, .. } => match rule {
                PmRule::Parity => ctx.len() % 2 == 1,
                PmRule::Negated {
                    default_reversed,
                    contexts,
                } => {
                    let flip = ctx.len() <= self.max_ctx_len && contexts.contains(ctx);
                    default_reversed ^ flip
                }
            },
            _ => unreachable!("pm_reversed on a non-± scheme"),
        }
    }

    /// Base and reversed permutations of a ± scheme.
    pub(crate) fn pm_perms(&self) -> Result<(&Permutation, &Permutation), Error> {
        match &self.kind {
            SchemeKind::PlusMinus { base, reversed, .. } => Ok((base, reversed)),
            _ => Err(Error::SchemeKind { expected: "pm" }),
        }
    }

    /// Parse the textual scheme format.
    pub fn parse(text: &str) -> Result<Self, Error> {
        parse_scheme(text)
    }

    /// Canonical textual form; parsing it back yields an equivalent scheme.
    pub fn to_text(&self) -> String {
        serialize_scheme(self)
    }
}

// ---------------------------------------------------------------------------
// Textual format
// ---------------------------------------------------------------------------

pub(crate) fn escape_bytes(bytes: &[u8]) -> String {
    let mut out = String::new();
    for &b in bytes {
        let meta = matches!(b, b'\\' | b'#' | b'=');
        if (0x21..=0x7e).contains(&b) && !meta {
            out.push(b as char);
        } else {
            let _ = write!(out, "\\x{b:02x}");
        }
    }
    out
}

pub(crate) fn unescape_token(tok: &str, line: usize) -> Result<Vec<u8>, Error> {
    let mut out = Vec::new();
    let mut chars = tok.bytes();
    while let Some(b) = chars.next() {
        if b != b'\\' {
            out.push(b);
            continue;
        }
        match chars.next() {
            Some(b'x') => {
                let hi = chars.next();
                let lo = chars.next();
                let (Some(hi), Some(lo)) = (hi, lo) else {
                    return Err(Error::scheme_parse(line, "truncated \\x escape"));
                };
                let hex = |c: u8| (c as char).to_digit(16);
                match (hex(hi), hex(lo)) {
                    (Some(h), Some(l)) => out.push((h * 16 + l) as u8),
                    _ => return Err(Error::scheme_parse(line, "bad \\x escape digits")),
                }
            }
            Some(b'\\') => out.push(b'\\'),
            _ => return Err(Error::scheme_parse(line, "unknown escape")),
        }
    }
    Ok(out)
}

struct Tok {
    line: usize,
    text: String,
}

fn tokenize(text: &str) -> Vec<Tok> {
    let mut toks = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for t in line.split_whitespace() {
            toks.push(Tok {
                line: i + 1,
                text: t.to_string(),
            });
        }
    }
    toks
}

fn parse_scheme(text: &str) -> Result<OrderingScheme, Error> {
    let toks = tokenize(text);
    let mut kv: Vec<(usize, String, String)> = Vec::new(); // key=value pairs
    let mut ctxs: Vec<(usize, String, String)> = Vec::new(); // ctx:CTX=PERM
    let mut negs: Vec<(usize, String)> = Vec::new(); // neg:CTX

    for t in &toks {
        if let Some(rest) = t.text.strip_prefix("ctx:") {
            let Some(eq) = rest.find('=') else {
                return Err(Error::scheme_parse(t.line, "ctx line missing '='"));
            };
            ctxs.push((t.line, rest[..eq].to_string(), rest[eq + 1..].to_string()));
        } else if let Some(rest) = t.text.strip_prefix("neg:") {
            negs.push((t.line, rest.to_string()));
        } else if let Some(eq) = t.text.find('=') {
            kv.push((
                t.line,
                t.text[..eq].to_string(),
                t.text[eq + 1..].to_string(),
            ));
        } else {
            return Err(Error::scheme_parse(
                t.line,
                format!("stray token `{}`", t.text),
            ));
        }
    }

    let get = |key: &str| kv.iter().find(|(_, k, _)| k == key);
    let (kline, _, kind) = get("kind")
        .ok_or_else(|| Error::scheme_parse(1, "missing kind="))?
        .clone();
    let (aline, _, alpha_tok) = get("alphabet")
        .ok_or_else(|| Error::scheme_parse(kline, "missing alphabet="))?
        .clone();
    let alphabet = Alphabet::new(&unescape_token(&alpha_tok, aline)?)
        .map_err(|e| Error::scheme_parse(aline, e.to_string()))?;

    let parse_perm = |tok: &str, line: usize| -> Result<Permutation, Error> {
        let bytes = unescape_token(tok, line)?;
        if bytes.len() != alphabet.size() {
            return Err(Error::scheme_parse(
                line,
                format!(
                    "permutation `{tok}` must list all {} alphabet symbols",
                    alphabet.size()
                ),
            ));
        }
        let ranks = alphabet
            .encode(&bytes)
            .map_err(|e| Error::scheme_parse(line, e.to_string()))?;
        Permutation::from_order(&ranks)
            .map_err(|_| Error::scheme_parse(line, format!("permutation `{tok}` repeats a symbol")))
    };
    let parse_ctx = |tok: &str, line: usize| -> Result<Vec<Sym>, Error> {
        let bytes = unescape_token(tok, line)?;
        alphabet
            .encode(&bytes)
            .map_err(|e| Error::scheme_parse(line, e.to_string()))
    };

    match kind.as_str() {
        "const" => {
            let (l, _, pi) = get("pi")
                .ok_or_else(|| Error::scheme_parse(kline, "const scheme needs pi="))?
                .clone();
            OrderingScheme::constant(alphabet.clone(), parse_perm(&pi, l)?)
        }
        "posmod" => {
            let (l, _, ktok) = get("k")
                .ok_or_else(|| Error::scheme_parse(kline, "posmod scheme needs k="))?
                .clone();
            let k: usize = ktok
                .parse()
                .map_err(|_| Error::scheme_parse(l, "k must be a positive integer"))?;
            if k == 0 {
                return Err(Error::scheme_parse(l, "k must be >= 1"));
            }
            let mut perms = Vec::with_capacity(k);
            for i in 0..k {
                let key = format!("pi{i}");
                let (pl, _, ptok) = get(&key)
                    .ok_or_else(|| Error::scheme_parse(kline, format!("missing {key}=")))?
                    .clone();
                perms.push(parse_perm(&ptok, pl)?);
            }
            OrderingScheme::position_mod(alphabet.clone(), perms)
        }
        "pm" => {
            let (bl, _, btok) = get("base")
                .ok_or_else(|| Error::scheme_parse(kline, "pm scheme needs base="))?
                .clone();
            let base = parse_perm(&btok, bl)?;
            let parity = match get("parity") {
                Some((_, _, v)) if v == "on" => true,
                Some((_, _, v)) if v == "off" => false,
                Some((l, _, v)) => {
                    return Err(Error::scheme_parse(
                        *l,
                        format!("parity must be on/off, got `{v}`"),
                    ))
                }
                None => false,
            };
            if parity {
                if !negs.is_empty() {
                    return Err(Error::scheme_parse(
                        negs[0].0,
                        "parity=on schemes take no neg: lines",
                    ));
                }
                return OrderingScheme::pm_parity(alphabet.clone(), base);
            }
            let default_reversed = match get("default") {
                Some((_, _, v)) if v == "+" => false,
                Some((_, _, v)) if v == "-" => true,
                Some((l, _, v)) => {
                    return Err(Error::scheme_parse(
                        *l,
                        format!("default must be + or -, got `{v}`"),
                    ))
                }
                None => return Err(Error::scheme_parse(kline, "pm scheme needs default=+|-")),
            };
            let mut contexts = HashSet::new();
            for (l, c) in &negs {
                contexts.insert(parse_ctx(c, *l)?);
            }
            OrderingScheme::plus_minus(alphabet.clone(), base, default_reversed, contexts)
        }
        "local" | "explicit" => {
            let (dl, _, dtok) = get("default")
                .ok_or_else(|| Error::scheme_parse(kline, "scheme needs default="))?
                .clone();
            let default = parse_perm(&dtok, dl)?;
            let mut contexts = HashMap::new();
            for (l, c, p) in &ctxs {
                contexts.insert(parse_ctx(c, *l)?, parse_perm(p, *l)?);
            }
            if kind == "local" {
                let (l, _, ktok) = get("k")
                    .ok_or_else(|| Error::scheme_parse(kline, "local scheme needs k="))?
                    .clone();
                let k: usize = ktok
                    .parse()
                    .map_err(|_| Error::scheme_parse(l, "k must be a positive integer"))?;
                OrderingScheme::local(alphabet.clone(), k, default, contexts)
                    .map_err(|e| Error::scheme_parse(l, e.to_string()))
            } else {
                OrderingScheme::explicit(alphabet.clone(), default, contexts)
            }
        }
        other => Err(Error::scheme_parse(
            kline,
            format!("unknown kind `{other}`"),
        )),
    }
}

fn serialize_scheme(s: &OrderingScheme) -> String {
    let a = s.alphabet();
    let perm_text = |p: &Permutation| {
        let bytes: Vec<u8> = p.order().iter().map(|&r| a.byte(r)).collect();
        escape_bytes(&bytes)
    };
    let ctx_text = |c: &[Sym]| escape_bytes(&a.decode(c));
    let alpha: Vec<u8> = (0..a.size()).map(|i| a.byte(i as Sym)).collect();

    let mut out = String::new();
    match s.kind() {
        SchemeKind::Constant { pi } => {
            let _ = writeln!(out, "kind=const pi={}", perm_text(pi));
            let _ = writeln!(out, "alphabet={}", escape_bytes(&alpha));
        }
        SchemeKind::PositionMod { k, perms } => {
            let _ = write!(out, "kind=posmod k={k}");
            for (i, p) in perms.iter().enumerate() {
                let _ = write!(out, " pi{i}={}", perm_text(p));
            }
            out.push('\n');
            let _ = writeln!(out, "alphabet={}", escape_bytes(&alpha));
        }
        SchemeKind::PlusMinus { base, rule, .. } => match rule {
            PmRule::Parity => {
                let _ = writeln!(out, "kind=pm base={} parity=on", perm_text(base));
                let _ = writeln!(out, "alphabet={}", escape_bytes(&alpha));
            }
            PmRule::Negated {
                default_reversed,
                contexts,
            } => {
                let sign = if *default_reversed { '-' } else { '+' };
                let _ = writeln!(
                    out,
                    "kind=pm base={} default={sign} parity=off",
                    perm_text(base)
                );
                let _ = writeln!(out, "alphabet={}", escape_bytes(&alpha));
                let mut sorted: Vec<&Vec<Sym>> = contexts.iter().collect();
                sorted.sort();
                for c in sorted {
                    let _ = writeln!(out, "neg:{}", ctx_text(c));
                }
            }
        },
        SchemeKind::Local {
            k,
            default,
            contexts,
        } => {
            let _ = writeln!(out, "kind=local k={k}");
            let _ = writeln!(out, "alphabet={}", escape_bytes(&alpha));
            let _ = writeln!(out, "default={}", perm_text(default));
            let mut sorted: Vec<(&Vec<Sym>, &Permutation)> = contexts.iter().collect();
            sorted.sort_by(|x, y| x.0.cmp(y.0));
            for (c, p) in sorted {
                let _ = writeln!(out, "ctx:{}={}", ctx_text(c), perm_text(p));
            }
        }
        SchemeKind::Explicit { default, contexts } => {
            let _ = writeln!(out, "kind=explicit");
            let _ = writeln!(out, "alphabet={}", escape_bytes(&alpha));
            let _ = writeln!(out, "default={}", perm_text(default));
            let mut sorted: Vec<(&Vec<Sym>, &Permutation)> = contexts.iter().collect();
            sorted.sort_by(|x, y| x.0.cmp(y.0));
            for (c, p) in sorted {
                let _ = writeln!(out, "ctx:{}={}", ctx_text(c), perm_text(p));
            }
        }
    }
    out
}
