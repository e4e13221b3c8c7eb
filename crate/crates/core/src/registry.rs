//! Persons, cultures and editions.
//!
//! A person is keyed by the canonical English article title and carries a
//! localized title per edition, a birth country, an optional birth year and
//! a gender. The culture of a person is the language most spoken in the
//! birth country; countries outside the 24 edition languages (and the
//! unknown country `XX`) map to the catch-all culture `WR`.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{BufRead, Read};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;
use unicode_normalization::{is_nfc_quick, IsNormalized, UnicodeNormalization};

use crate::aggregate::TopList;
use crate::graph::NodeId;
use crate::rank::Algorithm;

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("unknown language code {0:?}")]
    UnknownLanguage(String),
    #[error("{0:?} is not an edition code")]
    NotAnEdition(String),
    #[error("invalid country code {0:?}")]
    BadCountry(String),
    #[error("invalid gender {0:?}")]
    BadGender(String),
    #[error("line {line}: invalid birth year {text:?}")]
    BadYear { line: usize, text: String },
    #[error("line {line}: birth year 0 does not exist")]
    ZeroYear { line: usize },
    #[error("year 0 has no century")]
    NoCentury,
    #[error("duplicate person id {0:?}")]
    DuplicatePerson(String),
    #[error("{edition} title {title:?} claimed by both {first:?} and {second:?}")]
    DuplicateTitle {
        edition: LangCode,
        title: String,
        first: String,
        second: String,
    },
    #[error("missing column {0:?}")]
    MissingColumn(&'static str),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

macro_rules! lang_codes {
    ($($variant:ident => $code:literal, $name:literal;)*) => {
        /// The 24 edition languages plus `WR`, the rest of the world.
        ///
        /// Declaration order (edition-catalog order, `WR` last) is also the
        /// node order of the culture network.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        pub enum LangCode {
            $($variant,)*
        }

        impl LangCode {
            pub const ALL: [LangCode; 25] = [$(LangCode::$variant,)*];

            pub fn code(self) -> &'static str {
                match self {
                    $(LangCode::$variant => $code,)*
                }
            }

            pub fn language_name(self) -> &'static str {
                match self {
                    $(LangCode::$variant => $name,)*
                }
            }
        }

        impl FromStr for LangCode {
            type Err = RegistryError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s.trim().to_ascii_uppercase().as_str() {
                    $($code => Ok(LangCode::$variant),)*
                    _ => Err(RegistryError::UnknownLanguage(s.to_string())),
                }
            }
        }
    };
}

lang_codes! {
    En => "EN", "English";
    Nl => "NL", "Dutch";
    De => "DE", "German";
    Fr => "FR", "French";
    Es => "ES", "Spanish";
    It => "IT", "Italian";
    Pt => "PT", "Portuguese";
    El => "EL", "Greek";
    Da => "DA", "Danish";
    Sv => "SV", "Swedish";
    Pl => "PL", "Polish";
    Hu => "HU", "Hungarian";
    Ru => "RU", "Russian";
    He => "HE", "Hebrew";
    Tr => "TR", "Turkish";
    Ar => "AR", "Arabic";
    Fa => "FA", "Persian";
    Hi => "HI", "Hindi";
    Ms => "MS", "Malaysian";
    Th => "TH", "Thai";
    Vi => "VI", "Vietnamese";
    Zh => "ZH", "Chinese";
    Ko => "KO", "Korean";
    Ja => "JA", "Japanese";
    Wr => "WR", "World";
}

impl LangCode {
    /// The 24 codes that name a Wikipedia edition.
    pub fn editions() -> &'static [LangCode] {
        &Self::ALL[..24]
    }

    pub fn is_edition(self) -> bool {
        self != LangCode::Wr
    }

    /// Position in [`LangCode::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    /// Parses a code and rejects `WR`.
    pub fn parse_edition(s: &str) -> Result<LangCode, RegistryError> {
        let code: LangCode = s.parse()?;
        if code.is_edition() {
            Ok(code)
        } else {
            Err(RegistryError::NotAnEdition(s.to_string()))
        }
    }
}

impl fmt::Display for LangCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Two-letter country code; `XX` stands for an unknown birth place.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountryCode([u8; 2]);

impl CountryCode {
    pub const UNKNOWN: CountryCode = CountryCode(*b"XX");

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("ascii")
    }
}

impl FromStr for CountryCode {
    type Err = RegistryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(CountryCode::UNKNOWN);
        }
        let b = t.as_bytes();
        if b.len() != 2 || !b.iter().all(u8::is_ascii_alphabetic) {
            return Err(RegistryError::BadCountry(s.to_string()));
        }
        Ok(CountryCode([b[0].to_ascii_uppercase(), b[1].to_ascii_uppercase()]))
    }
}

impl fmt::Display for CountryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CountryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CountryCode({})", self.as_str())
    }
}

/// Birth country → culture, by most spoken language.
const COUNTRY_CULTURES: &[(&str, &str)] = &[
    ("AE", "AR"), ("AF", "FA"), ("AL", "WR"), ("AR", "ES"), ("AT", "DE"), ("AU", "EN"),
    ("AZ", "TR"), ("BE", "NL"), ("BG", "WR"), ("BR", "PT"), ("BS", "EN"), ("BY", "RU"),
    ("CA", "EN"), ("CH", "DE"), ("CL", "ES"), ("CN", "ZH"), ("CO", "ES"), ("CU", "ES"),
    ("CY", "EL"), ("CZ", "WR"), ("DE", "DE"), ("DK", "DA"), ("DZ", "AR"), ("EG", "AR"),
    ("ES", "ES"), ("FI", "WR"), ("FR", "FR"), ("GE", "WR"), ("GR", "EL"), ("HK", "ZH"),
    ("HR", "WR"), ("HU", "HU"), ("ID", "WR"), ("IE", "EN"), ("IL", "HE"), ("IN", "HI"),
    ("IQ", "AR"), ("IR", "FA"), ("IS", "WR"), ("IT", "IT"), ("JP", "JA"), ("KE", "EN"),
    ("KG", "WR"), ("KH", "WR"), ("KO", "KO"), ("KP", "KO"), ("KW", "AR"), ("KZ", "WR"),
    ("LB", "AR"), ("LT", "WR"), ("LV", "WR"), ("LY", "AR"), ("MK", "WR"), ("MM", "WR"),
    ("MN", "WR"), ("MX", "ES"), ("MY", "MS"), ("NL", "NL"), ("NO", "WR"), ("NP", "WR"),
    ("NZ", "EN"), ("OM", "AR"), ("PA", "ES"), ("PE", "ES"), ("PK", "HI"), ("PL", "PL"),
    ("PS", "AR"), ("PT", "PT"), ("RO", "WR"), ("RS", "WR"), ("RU", "RU"), ("SA", "AR"),
    ("SD", "AR"), ("SE", "SV"), ("SG", "ZH"), ("SI", "WR"), ("SK", "WR"), ("SR", "NL"),
    ("SY", "AR"), ("TH", "TH"), ("TJ", "WR"), ("TN", "AR"), ("TR", "TR"), ("TW", "ZH"),
    ("TZ", "WR"), ("UA", "WR"), ("UK", "EN"), ("US", "EN"), ("UZ", "WR"), ("VE", "ES"),
    ("VN", "VI"), ("XX", "WR"), ("YE", "AR"), ("ZA", "WR"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountryCultureMap {
    entries: BTreeMap<CountryCode, LangCode>,
}

impl Default for CountryCultureMap {
    fn default() -> Self {
        let entries = COUNTRY_CULTURES
            .iter()
            .map(|(cc, lc)| (cc.parse().unwrap(), lc.parse().unwrap()))
            .collect();
        CountryCultureMap { entries }
    }
}

impl CountryCultureMap {
    /// Reads `CC<TAB>LC` lines; `#` starts a comment. The file replaces the
    /// built-in table.
    pub fn load<R: BufRead>(reader: R) -> Result<Self, RegistryError> {
        let mut entries = BTreeMap::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut parts = t.split('\t');
            let (Some(cc), Some(lc), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(RegistryError::Parse {
                    line: idx + 1,
                    message: "expected CC<TAB>LC".into(),
                });
            };
            entries.insert(cc.parse()?, lc.parse()?);
        }
        Ok(CountryCultureMap { entries })
    }

    /// Culture of a birth country; `WR` when the country is not listed.
    pub fn lookup(&self, country: CountryCode) -> LangCode {
        self.entries.get(&country).copied().unwrap_or(LangCode::Wr)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (CountryCode, LangCode)> + '_ {
        self.entries.iter().map(|(&c, &l)| (c, l))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edition {
    pub code: LangCode,
    pub article_count: u64,
}

/// Article counts of the 24 editions (February 2013 snapshot).
const EDITION_SIZES: [u64; 24] = [
    4_212_493, 1_144_615, 1_532_978, 1_352_825, 974_025, 1_017_953, 758_227, 82_563, 175_228,
    780_872, 949_153, 235_212, 966_284, 144_959, 206_311, 203_328, 295_696, 96_869, 180_886,
    78_953, 594_089, 663_485, 231_959, 852_087,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditionCatalog {
    pub editions: Vec<Edition>,
}

impl Default for EditionCatalog {
    fn default() -> Self {
        EditionCatalog {
            editions: LangCode::editions()
                .iter()
                .zip(EDITION_SIZES)
                .map(|(&code, article_count)| Edition {
                    code,
                    article_count,
                })
                .collect(),
        }
    }
}

impl EditionCatalog {
    /// Reads `LC<TAB>article_count` lines.
    pub fn load<R: BufRead>(reader: R) -> Result<Self, RegistryError> {
        let mut editions: Vec<Edition> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let parse_err = |message: &str| RegistryError::Parse {
                line: idx + 1,
                message: message.to_string(),
            };
            let (lc, count) = t.split_once('\t').ok_or_else(|| parse_err("expected LC<TAB>count"))?;
            let code = LangCode::parse_edition(lc)?;
            if editions.iter().any(|e| e.code == code) {
                return Err(parse_err("duplicate edition"));
            }
            let article_count = count
                .trim()
                .parse()
                .map_err(|_| parse_err("article count is not an integer"))?;
            editions.push(Edition {
                code,
                article_count,
            });
        }
        Ok(EditionCatalog { editions })
    }

    pub fn get(&self, code: LangCode) -> Option<&Edition> {
        self.editions.iter().find(|e| e.code == code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gender {
    Male,
    Female,
    Unknown,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Male => "male",
            Gender::Female => "female",
            Gender::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gender {
    type Err = RegistryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "male" | "m" => Ok(Gender::Male),
            "female" | "f" => Ok(Gender::Female),
            "" | "unknown" | "u" => Ok(Gender::Unknown),
            _ => Err(RegistryError::BadGender(s.to_string())),
        }
    }
}

/// Century of a birth year, with no year 0: 1..=100 is century 1 and
/// -100..=-1 is century -1.
pub fn century_of(year: i32) -> Result<i32, RegistryError> {
    if year == 0 {
        return Err(RegistryError::NoCentury);
    }
    let c = (year.unsigned_abs() as i64 + 99) / 100;
    Ok(if year > 0 { c as i32 } else { -(c as i32) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Person {
    pub id: String,
    pub titles: BTreeMap<LangCode, String>,
    pub birth_country: CountryCode,
    /// `None` when unknown. Never 0.
    pub birth_year: Option<i32>,
    pub gender: Gender,
    pub culture: LangCode,
}

impl Person {
    pub fn century(&self) -> Option<i32> {
        self.birth_year.and_then(|y| century_of(y).ok())
    }

    pub fn title(&self, edition: LangCode) -> Option<&str> {
        self.titles.get(&edition).map(String::as_str)
    }
}

pub fn assign_culture(person: &Person, map: &CountryCultureMap) -> LangCode {
    map.lookup(person.birth_country)
}

/// NFC form of an article title.
pub fn normalize_title(s: &str) -> Cow<'_, str> {
    match is_nfc_quick(s.chars()) {
        IsNormalized::Yes => Cow::Borrowed(s),
        _ => Cow::Owned(s.nfc().collect()),
    }
}

const FIXED_COLUMNS: [&str; 4] = ["person_id", "birth_country", "birth_year", "gender"];

/// All persons, indexed by id and by localized title.
#[derive(Debug, Clone)]
pub struct PersonRegistry {
    persons: Vec<Person>,
    by_id: HashMap<String, usize>,
    by_title: HashMap<(LangCode, String), usize>,
    culture_map: CountryCultureMap,
}

impl PersonRegistry {
    pub fn new(culture_map: CountryCultureMap) -> Self {
        PersonRegistry {
            persons: Vec::new(),
            by_id: HashMap::new(),
            by_title: HashMap::new(),
            culture_map,
        }
    }

    /// Adds a person; ids and titles are NFC-normalized, the EN title
    /// defaults to the id and the culture is derived from the birth country.
    pub fn insert(
        &mut self,
        id: &str,
        titles: BTreeMap<LangCode, String>,
        birth_country: CountryCode,
        birth_year: Option<i32>,
        gender: Gender,
    ) -> Result<&Person, RegistryError> {
        let id = normalize_title(id.trim()).into_owned();
        if self.by_id.contains_key(&id) {
            return Err(RegistryError::DuplicatePerson(id));
        }
        if birth_year == Some(0) {
            return Err(RegistryError::NoCentury);
        }
        let mut titles: BTreeMap<LangCode, String> = titles
            .into_iter()
            .map(|(e, t)| (e, normalize_title(&t).into_owned()))
            .collect();
        titles.entry(LangCode::En).or_insert_with(|| id.clone());

        let slot = self.persons.len();
        for (&edition, title) in &titles {
            if let Some(&other) = self.by_title.get(&(edition, title.clone())) {
                return Err(RegistryError::DuplicateTitle {
                    edition,
                    title: title.clone(),
                    first: self.persons[other].id.clone(),
                    second: id,
                });
            }
        }
        for (&edition, title) in &titles {
            self.by_title.insert((edition, title.clone()), slot);
        }
        let culture = self.culture_map.lookup(birth_country);
        self.by_id.insert(id.clone(), slot);
        self.persons.push(Person {
            id,
            titles,
            birth_country,
            birth_year,
            gender,
            culture,
        });
        Ok(&self.persons[slot])
    }

    /// Reads a persons TSV: `person_id, birth_country, birth_year, gender`
    /// followed by one column per edition code holding the localized title
    /// (empty when the person has no article there). An empty birth year
    /// means unknown.
    pub fn load<R: Read>(reader: R, culture_map: CountryCultureMap) -> Result<Self, RegistryError> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(b'\t')
            .quoting(false)
            .has_headers(true)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        for (i, want) in FIXED_COLUMNS.iter().enumerate() {
            if headers.get(i).map(str::trim) != Some(*want) {
                return Err(RegistryError::MissingColumn(want));
            }
        }
        let editions: Vec<LangCode> = headers
            .iter()
            .skip(FIXED_COLUMNS.len())
            .map(LangCode::parse_edition)
            .collect::<Result<_, _>>()?;

        let mut registry = PersonRegistry::new(culture_map);
        for (idx, record) in rdr.records().enumerate() {
            let record = record?;
            let line = idx + 2;
            let id = record.get(0).unwrap_or("").trim();
            if id.is_empty() {
                return Err(RegistryError::Parse {
                    line,
                    message: "empty person_id".into(),
                });
            }
            let country: CountryCode = record.get(1).unwrap_or("").parse()?;
            let year_text = record.get(2).unwrap_or("").trim();
            let birth_year = if year_text.is_empty() {
                None
            } else {
                let y: i32 = year_text.parse().map_err(|_| RegistryError::BadYear {
                    line,
                    text: year_text.to_string(),
                })?;
                if y == 0 {
                    return Err(RegistryError::ZeroYear { line });
                }
                Some(y)
            };
            let gender: Gender = record.get(3).unwrap_or("").parse()?;
            let titles = editions
                .iter()
                .enumerate()
                .filter_map(|(k, &e)| {
                    let t = record.get(FIXED_COLUMNS.len() + k)?.trim();
                    (!t.is_empty()).then(|| (e, t.to_string()))
                })
                .collect();
            registry.insert(id, titles, country, birth_year, gender)?;
        }
        Ok(registry)
    }

    pub fn len(&self) -> usize {
        self.persons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.persons.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Person> {
        self.by_id.get(id).map(|&i| &self.persons[i])
    }

    /// Person whose article in `edition` has this (already normalized) title.
    pub fn by_title(&self, edition: LangCode, title: &str) -> Option<&Person> {
        self.by_title
            .get(&(edition, title.to_string()))
            .map(|&i| &self.persons[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = &Person> {
        self.persons.iter()
    }

    pub fn culture_map(&self) -> &CountryCultureMap {
        &self.culture_map
    }
}

/// Walks a full article ordering and keeps the first `n` articles whose
/// title belongs to a registered person of this edition. Ranks are
/// assigned 1..=n in encounter order. A shorter list is returned, with a
/// warning, when the ordering runs out.
pub fn select_top_people(
    ordering: &[NodeId],
    labels: &[String],
    registry: &PersonRegistry,
    edition: LangCode,
    algorithm: Algorithm,
    n: usize,
) -> TopList {
    let mut ids = Vec::with_capacity(n);
    if n > 0 {
        for &node in ordering {
            let title = normalize_title(&labels[node as usize]);
            if let Some(p) = registry.by_title(edition, &title) {
                ids.push(p.id.clone());
                if ids.len() == n {
                    break;
                }
            }
        }
    }
    if ids.len() < n {
        log::warn!(
            "{edition} {algorithm}: found {} of {n} requested persons",
            ids.len()
        );
    }
    TopList::from_ranked_ids(edition, algorithm, ids).expect("titles map to distinct persons")
}

#[cfg(test)]
mod tests {
    use super::*;

    const PERSONS: &str = "person_id\tbirth_country\tbirth_year\tgender\tEN\tFR\tDE\n\
        Napoleon\tFR\t1769\tmale\tNapoleon\tNapoléon Ier\tNapoleon Bonaparte\n\
        Nobody Known\tXX\t\tunknown\t\t\t\n\
        Charlemagne\tBE\t742\tmale\tCharlemagne\tCharlemagne\tKarl der Große\n\
        Socrates\tGR\t-470\tmale\tSocrates\tSocrate\tSokrates\n";

    fn registry() -> PersonRegistry {
        PersonRegistry::load(PERSONS.as_bytes(), CountryCultureMap::default()).unwrap()
    }

    #[test]
    fn table_is_complete() {
        let map = CountryCultureMap::default();
        assert_eq!(map.len(), 94);
        for (cc, lc) in [("FR", "FR"), ("TR", "TR"), ("UA", "WR"), ("PS", "AR"), ("BE", "NL"), ("XX", "WR")] {
            assert_eq!(map.lookup(cc.parse().unwrap()), lc.parse().unwrap(), "{cc}");
        }
        assert_eq!(map.lookup("QQ".parse().unwrap()), LangCode::Wr);
    }

    #[test]
    fn cultures_from_birth_country() {
        let r = registry();
        assert_eq!(r.len(), 4);
        assert_eq!(r.get("Napoleon").unwrap().culture, LangCode::Fr);
        assert_eq!(r.get("Nobody Known").unwrap().culture, LangCode::Wr);
        assert_eq!(r.get("Charlemagne").unwrap().culture, LangCode::Nl);
        let s = r.get("Socrates").unwrap();
        assert_eq!(s.century(), Some(-5));
        assert_eq!(assign_culture(s, r.culture_map()), s.culture);
    }

    #[test]
    fn en_title_defaults_to_id() {
        let r = registry();
        let p = r.get("Nobody Known").unwrap();
        assert_eq!(p.title(LangCode::En), Some("Nobody Known"));
        assert_eq!(p.birth_year, None);
        assert_eq!(p.century(), None);
    }

    #[test]
    fn title_lookup_is_nfc() {
        let r = registry();
        // "Napoléon" with a combining acute accent.
        let decomposed = "Napole\u{301}on Ier";
        let t = normalize_title(decomposed);
        assert_eq!(r.by_title(LangCode::Fr, &t).unwrap().id, "Napoleon");
        assert!(r.by_title(LangCode::De, "Napoleon").is_none());
    }

    #[test]
    fn load_errors() {
        let head = "person_id\tbirth_country\tbirth_year\tgender\tEN\n";
        let dup = format!("{head}A\tFR\t1900\tmale\tA\nA\tFR\t1900\tmale\tA2\n");
        assert!(matches!(
            PersonRegistry::load(dup.as_bytes(), CountryCultureMap::default()),
            Err(RegistryError::DuplicatePerson(_))
        ));
        let dup_title = format!("{head}A\tFR\t1900\tmale\tX\nB\tFR\t1900\tmale\tX\n");
        match PersonRegistry::load(dup_title.as_bytes(), CountryCultureMap::default()) {
            Err(RegistryError::DuplicateTitle { first, second, .. }) => {
                assert_eq!((first.as_str(), second.as_str()), ("A", "B"));
            }
            other => panic!("{other:?}"),
        }
        let zero = format!("{head}A\tFR\t0\tmale\tA\n");
        assert!(matches!(
            PersonRegistry::load(zero.as_bytes(), CountryCultureMap::default()),
            Err(RegistryError::ZeroYear { line: 2 })
        ));
        let bad_header = "id\tbirth_country\tbirth_year\tgender\n";
        assert!(PersonRegistry::load(bad_header.as_bytes(), CountryCultureMap::default()).is_err());
        let wr_column = "person_id\tbirth_country\tbirth_year\tgender\tWR\n";
        assert!(PersonRegistry::load(wr_column.as_bytes(), CountryCultureMap::default()).is_err());
    }

    #[test]
    fn centuries() {
        assert_eq!(century_of(1769).unwrap(), 18);
        assert_eq!(century_of(-480).unwrap(), -5);
        assert_eq!(century_of(100).unwrap(), 1);
        assert_eq!(century_of(101).unwrap(), 2);
        assert_eq!(century_of(-1).unwrap(), -1);
        assert_eq!(century_of(-100).unwrap(), -1);
        assert_eq!(century_of(-101).unwrap(), -2);
        assert!(century_of(0).is_err());
    }

    proptest::proptest! {
        #[test]
        fn century_is_odd_and_monotone(y in 1i32..5000, step in 0i32..300) {
            proptest::prop_assert_eq!(century_of(-y).unwrap(), -century_of(y).unwrap());
            proptest::prop_assert!(century_of(y + step).unwrap() >= century_of(y).unwrap());
            proptest::prop_assert!(century_of(-y).unwrap() >= century_of(-y - step).unwrap());
        }
    }

    #[test]
    fn culture_map_file() {
        let map = CountryCultureMap::load("# custom\nFR\tFR\nUA\tRU\n".as_bytes()).unwrap();
        assert_eq!(map.lookup("UA".parse().unwrap()), LangCode::Ru);
        assert_eq!(map.lookup("DE".parse().unwrap()), LangCode::Wr);
        assert!(CountryCultureMap::load("FR FR\n".as_bytes()).is_err());
    }

    #[test]
    fn edition_catalog() {
        let c = EditionCatalog::default();
        assert_eq!(c.editions.len(), 24);
        assert_eq!(c.get(LangCode::En).unwrap().article_count, 4_212_493);
        assert_eq!(c.get(LangCode::Ja).unwrap().article_count, 852_087);
        let loaded = EditionCatalog::load("EN\t10\nKO\t5\n".as_bytes()).unwrap();
        assert_eq!(loaded.editions.len(), 2);
        assert!(EditionCatalog::load("WR\t10\n".as_bytes()).is_err());
        assert!(EditionCatalog::load("EN\t10\nEN\t3\n".as_bytes()).is_err());
    }

    #[test]
    fn top_people_filters_persons() {
        let r = registry();
        let labels: Vec<String> = ["Paris", "Napoléon Ier", "Louvre", "Socrate", "Charlemagne"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let t = select_top_people(&[0, 1, 2, 3, 4], &labels, &r, LangCode::Fr, Algorithm::PageRank, 2);
        let ids: Vec<_> = t.entries.iter().map(|e| (e.person_id.as_str(), e.rank)).collect();
        assert_eq!(ids, vec![("Napoleon", 1), ("Socrates", 2)]);

        let all = select_top_people(&[4, 3, 2, 1, 0], &labels, &r, LangCode::Fr, Algorithm::PageRank, 100);
        assert_eq!(all.entries.len(), 3);
        assert_eq!(all.entries[0].person_id, "Charlemagne");

        let empty = PersonRegistry::new(CountryCultureMap::default());
        let none = select_top_people(&[0, 1], &labels, &empty, LangCode::Fr, Algorithm::PageRank, 100);
        assert!(none.entries.is_empty());
    }
}
