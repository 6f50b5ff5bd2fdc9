//! Per-language monophthong inventories and shared/non-shared classification.
//!
//! Inventories are data: a UTF-8 file with one `CODE<TAB>symbol symbol ...`
//! line per language and `#` comments. The bundled file is checked against
//! the expected per-language vowel counts when loaded.

use std::fmt;
use std::path::Path;

use indexmap::{IndexMap, IndexSet};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../data/inventory.tsv");

/// Monophthong counts the bundled inventory must reproduce.
pub const BUNDLED_COUNTS: [(&str, usize); 6] =
    [("DE", 17), ("EN", 12), ("ES", 5), ("FR", 14), ("JA", 5), ("KO", 7)];

const VOWEL_LETTERS: &str = "aeiouyæɐɑɒɔəɘɚɛɜɝɞɤɨɪɯɵøœɶʉʊʌʏ";
const VOWEL_MODIFIERS: [char; 7] = [
    'ː',        // long
    'ˑ',        // half-long
    '\u{0303}', // nasal (combining tilde)
    '\u{0308}', // centralized (combining diaeresis)
    '\u{031E}', // lowered
    '\u{031D}', // raised
    '\u{032F}', // non-syllabic
];

/// Language identifier, stored upper-case (`EN`, `KO`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LanguageCode(String);

impl LanguageCode {
    pub fn new(code: &str) -> Result<Self> {
        let code = code.trim();
        if code.is_empty() || code.len() > 8 || !code.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(Error::UnknownLanguage(code.to_string()));
        }
        Ok(Self(code.to_ascii_uppercase()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for LanguageCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Strips surrounding whitespace and phonemic slashes: `/y/` -> `y`.
pub fn normalize_symbol(symbol: &str) -> &str {
    let s = symbol.trim();
    s.strip_prefix('/').and_then(|s| s.strip_suffix('/')).unwrap_or(s)
}

/// True for a vowel letter followed only by length/nasality/placement diacritics.
pub fn is_ipa_vowel(symbol: &str) -> bool {
    let mut chars = symbol.chars();
    match chars.next() {
        Some(c) if VOWEL_LETTERS.contains(c) => chars.all(|m| VOWEL_MODIFIERS.contains(&m)),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VowelInventory {
    pub language: LanguageCode,
    vowels: IndexSet<String>,
}

impl VowelInventory {
    pub fn new<I, S>(language: LanguageCode, symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut vowels = IndexSet::new();
        for sym in symbols {
            let sym = normalize_symbol(sym.as_ref());
            if !is_ipa_vowel(sym) {
                return Err(Error::InvalidInventory(format!("{language}: {sym:?} is not an IPA vowel")));
            }
            if !vowels.insert(sym.to_string()) {
                return Err(Error::InvalidInventory(format!("{language}: duplicate symbol {sym:?}")));
            }
        }
        if vowels.is_empty() {
            return Err(Error::InvalidInventory(format!("{language}: no vowels")));
        }
        Ok(Self { language, vowels })
    }

    pub fn contains(&self, vowel: &str) -> bool {
        self.vowels.contains(normalize_symbol(vowel))
    }

    pub fn len(&self) -> usize {
        self.vowels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vowels.is_empty()
    }

    pub fn vowels(&self) -> impl Iterator<Item = &str> {
        self.vowels.iter().map(String::as_str)
    }
}

/// Registry of inventories keyed by language. Immutable once loaded.
#[derive(Debug, Clone, PartialEq)]
pub struct Inventory {
    languages: IndexMap<LanguageCode, VowelInventory>,
}

impl Inventory {
    /// The bundled inventory, validated against [`BUNDLED_COUNTS`].
    pub fn bundled() -> Result<Self> {
        let inv = Self::parse(BUNDLED)?;
        inv.check_counts(&BUNDLED_COUNTS)?;
        Ok(inv)
    }

    pub fn bundled_text() -> &'static str {
        BUNDLED
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        if !path.is_file() {
            return Err(Error::MissingFile(path.to_path_buf()));
        }
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut languages = IndexMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (code, symbols) = line
                .split_once('\t')
                .ok_or_else(|| Error::InvalidInventory(format!("line {}: expected CODE<TAB>symbols", i + 1)))?;
            let code = LanguageCode::new(code)
                .map_err(|_| Error::InvalidInventory(format!("line {}: bad language code {code:?}", i + 1)))?;
            let inv = VowelInventory::new(code.clone(), symbols.split_whitespace())?;
            if languages.insert(code.clone(), inv).is_some() {
                return Err(Error::InvalidInventory(format!("line {}: {code} listed twice", i + 1)));
            }
        }
        if languages.is_empty() {
            return Err(Error::InvalidInventory("no languages".into()));
        }
        Ok(Self { languages })
    }

    /// Errors unless each listed language exists with exactly the given size.
    pub fn check_counts(&self, expected: &[(&str, usize)]) -> Result<()> {
        for &(code, n) in expected {
            let inv = self.get_str(code)?;
            if inv.len() != n {
                return Err(Error::InvalidInventory(format!("{code} has {} vowels, expected {n}", inv.len())));
            }
        }
        Ok(())
    }

    pub fn get(&self, code: &LanguageCode) -> Result<&VowelInventory> {
        self.languages.get(code).ok_or_else(|| Error::UnknownLanguage(code.to_string()))
    }

    pub fn get_str(&self, code: &str) -> Result<&VowelInventory> {
        self.get(&LanguageCode::new(code)?)
    }

    pub fn languages(&self) -> impl Iterator<Item = &LanguageCode> {
        self.languages.keys()
    }

    /// Vowels in both inventories, in the order they appear in `a`.
    pub fn shared_vowels(&self, a: &LanguageCode, b: &LanguageCode) -> Result<Vec<String>> {
        let (inv_a, inv_b) = (self.get(a)?, self.get(b)?);
        Ok(inv_a.vowels().filter(|v| inv_b.contains(v)).map(str::to_string).collect())
    }

    /// Whether `vowel` exists in both languages. Errors if it is in neither.
    pub fn is_shared(&self, vowel: &str, a: &LanguageCode, b: &LanguageCode) -> Result<bool> {
        let (inv_a, inv_b) = (self.get(a)?, self.get(b)?);
        match (inv_a.contains(vowel), inv_b.contains(vowel)) {
            (true, true) => Ok(true),
            (false, false) => Err(Error::VowelNotInPair {
                vowel: normalize_symbol(vowel).to_string(),
                a: a.to_string(),
                b: b.to_string(),
            }),
            _ => Ok(false),
        }
    }

    /// Vowels of `a` absent from `b`.
    pub fn unshared_vowels(&self, a: &LanguageCode, b: &LanguageCode) -> Result<Vec<String>> {
        let (inv_a, inv_b) = (self.get(a)?, self.get(b)?);
        Ok(inv_a.vowels().filter(|v| !inv_b.contains(v)).map(str::to_string).collect())
    }
}
