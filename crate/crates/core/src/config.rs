//! Species configuration, state tokens and unit-suffixed quantities.
//!
//! Configuration files are flat `key = value` text with one section per
//! species:
//!
//! ```text
//! # comments start with '#'
//! [rb]
//! label = rubidium, leading-order defects
//! s = 3.1311804
//! p = 2.6548849
//! l4 = 0.0
//! ```
//!
//! Defect keys are orbital letters (`s`, `p`, `d`, ...) or `l<N>`. Files are
//! looked up in the paths listed in `GRAVATOM_CONFIG` (separated by `:`;
//! a directory entry means `<dir>/gravatom.cfg`), after any file given
//! explicitly, and before the bundled `hydrogen` and `rb-example` profiles.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use crate::constants;
use crate::hydrogenics::{orbital_l, AtomicState};
use crate::transitions::DefectTable;
use crate::{Error, Result};

pub const CONFIG_ENV: &str = "GRAVATOM_CONFIG";
pub const CONFIG_FILE_NAME: &str = "gravatom.cfg";

pub const BUNDLED: &str = "\
# Bundled species profiles.

[hydrogen]
label = hydrogen, no quantum defects

[rb-example]
label = rubidium-like example, leading-order defects (s, p1/2, d3/2, f)
s = 3.1311804
p = 2.6548849
d = 1.34809171
f = 0.0165192
";

#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesProfile {
    pub label: Option<String>,
    pub table: DefectTable,
    /// Where the profile came from: a file path or `bundled`.
    pub origin: String,
}

fn defect_key_l(key: &str) -> Option<u32> {
    if let Some(rest) = key.strip_prefix('l') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            return rest.parse().ok();
        }
    }
    let mut chars = key.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii_lowercase() => orbital_l(c),
        _ => None,
    }
}

/// Parses a configuration text into profiles keyed by section name.
pub fn parse_config(text: &str, origin: &str) -> Result<BTreeMap<String, SpeciesProfile>> {
    let mut out: BTreeMap<String, SpeciesProfile> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(inner) = line.strip_prefix('[') {
            let name = inner
                .strip_suffix(']')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| Error::Config(format!("{origin}:{lineno}: malformed section header `{line}`")))?;
            if out.contains_key(name) {
                return Err(Error::Config(format!("{origin}:{lineno}: duplicate section [{name}]")));
            }
            out.insert(
                name.to_string(),
                SpeciesProfile { label: None, table: DefectTable::new(name), origin: origin.to_string() },
            );
            current = Some(name.to_string());
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::Config(format!("{origin}:{lineno}: expected `key = value`, got `{line}`")))?;
        let section = current
            .as_ref()
            .ok_or_else(|| Error::Config(format!("{origin}:{lineno}: `{key}` appears before any [species] section")))?;
        let profile = out.get_mut(section).expect("section inserted above");
        if key == "label" {
            profile.label = Some(value.to_string());
            continue;
        }
        let l = defect_key_l(key)
            .ok_or_else(|| Error::Config(format!("{origin}:{lineno}: unknown key `{key}` in [{section}]")))?;
        let defect: f64 = value
            .parse()
            .map_err(|_| Error::Config(format!("{origin}:{lineno}: `{value}` is not a number")))?;
        profile.table.set_defect(l, defect).map_err(|e| Error::Config(format!("{origin}:{lineno}: {e}")))?;
    }
    Ok(out)
}

pub fn bundled_profiles() -> BTreeMap<String, SpeciesProfile> {
    parse_config(BUNDLED, "bundled").expect("bundled profiles parse")
}

/// Files named by `GRAVATOM_CONFIG`, in order.
pub fn search_path() -> Vec<PathBuf> {
    std::env::var_os(CONFIG_ENV).map(|v| split_search_path(&v.to_string_lossy())).unwrap_or_default()
}

fn split_search_path(value: &str) -> Vec<PathBuf> {
    value
        .split(':')
        .filter(|s| !s.is_empty())
        .map(|s| {
            let p = PathBuf::from(s);
            if p.is_dir() {
                p.join(CONFIG_FILE_NAME)
            } else {
                p
            }
        })
        .collect()
}

fn read_profiles(path: &Path) -> Result<BTreeMap<String, SpeciesProfile>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text, &path.display().to_string())
}

/// Resolves a species name against an explicit file, the search path and
/// the bundled profiles, in that order. Missing search-path files are
/// skipped; an explicit file must exist.
pub fn load_species(name: &str, explicit: Option<&Path>) -> Result<SpeciesProfile> {
    if let Some(path) = explicit {
        if let Some(p) = read_profiles(path)?.remove(name) {
            return Ok(p);
        }
    }
    for path in search_path() {
        if !path.is_file() {
            log::debug!("config search path entry {} not found", path.display());
            continue;
        }
        if let Some(p) = read_profiles(&path)?.remove(name) {
            return Ok(p);
        }
    }
    bundled_profiles().remove(name).ok_or_else(|| Error::Config(format!("unknown species `{name}`")))
}

/// Parses `50s`, `51p`, `110g` into an m = 0 state. Unknown letters are
/// rejected.
pub fn parse_state(token: &str) -> Result<AtomicState> {
    let t = token.trim();
    let split = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
    let (digits, letters) = t.split_at(split);
    let bad = |why: &str| Error::Config(format!("invalid state token `{token}`: {why}"));
    if digits.is_empty() {
        return Err(bad("missing principal quantum number"));
    }
    let mut chars = letters.chars();
    let letter = match (chars.next(), chars.next()) {
        (Some(c), None) => c,
        (None, _) => return Err(bad("missing orbital letter")),
        _ => return Err(bad("expected a single orbital letter")),
    };
    let l = orbital_l(letter).ok_or_else(|| bad("unknown orbital letter"))?;
    let n: i64 = digits.parse().map_err(|_| bad("principal quantum number out of range"))?;
    AtomicState::new(n, l as i64, 0)
}

/// Parses `lower:upper`, e.g. `50s:51p`.
pub fn parse_state_pair(token: &str) -> Result<(AtomicState, AtomicState)> {
    let (a, b) = token
        .split_once(':')
        .ok_or_else(|| Error::Config(format!("expected `lower:upper`, got `{token}`")))?;
    Ok((parse_state(a)?, parse_state(b)?))
}

fn split_unit(text: &str) -> (f64, &str, bool) {
    let t = text.trim();
    let end = t
        .char_indices()
        .find(|&(i, c)| {
            !(c.is_ascii_digit() || c == '.' || c == '+' || c == '-' || ((c == 'e' || c == 'E') && i > 0 && t[i + 1..].starts_with(|d: char| d.is_ascii_digit() || d == '-' || d == '+')))
        })
        .map(|(i, _)| i)
        .unwrap_or(t.len());
    match t[..end].parse::<f64>() {
        Ok(v) => (v, t[end..].trim(), true),
        Err(_) => (f64::NAN, t, false),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Quantity {
    /// Angular frequency, rad/s.
    Angular(f64),
    /// Energy, Hartree.
    Energy(f64),
}

fn parse_quantity(text: &str) -> Result<Quantity> {
    let (v, unit, ok) = split_unit(text);
    if !ok || !v.is_finite() {
        return Err(Error::Config(format!("`{text}` is not a number with a unit")));
    }
    let q = match unit {
        "Hz" => Quantity::Angular(2.0 * PI * v),
        "kHz" => Quantity::Angular(2.0 * PI * v * 1e3),
        "MHz" => Quantity::Angular(2.0 * PI * v * 1e6),
        "GHz" => Quantity::Angular(2.0 * PI * v * 1e9),
        "rad/s" => Quantity::Angular(v),
        "eV" => Quantity::Energy(constants::ev_to_hartree(v)),
        "Hartree" | "Ha" | "hartree" => Quantity::Energy(v),
        "" => return Err(Error::Config(format!("`{text}` needs a unit (Hz, kHz, MHz, GHz, rad/s, eV, Hartree)"))),
        other => return Err(Error::Config(format!("unknown unit `{other}` in `{text}`"))),
    };
    Ok(q)
}

/// Frequency with explicit unit, returned in rad/s. `Hz` suffixes are
/// cyclic, `rad/s` angular.
pub fn parse_frequency(text: &str) -> Result<f64> {
    match parse_quantity(text)? {
        Quantity::Angular(w) => Ok(w),
        Quantity::Energy(_) => Err(Error::Config(format!("`{text}` is an energy, expected a frequency"))),
    }
}

/// Detuning as a frequency or an energy, returned in rad/s (energies via
/// Δ = δ/ħ).
pub fn parse_detuning(text: &str) -> Result<f64> {
    Ok(match parse_quantity(text)? {
        Quantity::Angular(w) => w,
        Quantity::Energy(e) => constants::hartree_to_rad_per_s(e),
    })
}

/// Energy with explicit unit, returned in Hartree.
pub fn parse_energy(text: &str) -> Result<f64> {
    match parse_quantity(text)? {
        Quantity::Energy(e) => Ok(e),
        Quantity::Angular(_) => Err(Error::Config(format!("`{text}` is a frequency, expected an energy"))),
    }
}

/// Non-negative integer that may be written as `1e6`.
pub fn parse_count(text: &str) -> Result<u64> {
    let v: f64 = text.trim().parse().map_err(|_| Error::Config(format!("`{text}` is not a number")))?;
    if !(v >= 0.0 && v.fract() == 0.0 && v <= 2f64.powi(53)) {
        return Err(Error::Config(format!("`{text}` is not a non-negative integer")));
    }
    Ok(v as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_match_builtin_tables() {
        let b = bundled_profiles();
        assert_eq!(b["hydrogen"].table, DefectTable::hydrogen());
        assert_eq!(b["rb-example"].table, DefectTable::rb_example());
    }

    #[test]
    fn parses_sections_and_keys() {
        let text = "# x\n[rb]\nlabel = test\ns = 3.13 # inline\nl1 = 2.65\n\n[cs]\nd=2.47\n";
        let p = parse_config(text, "t").unwrap();
        assert_eq!(p["rb"].label.as_deref(), Some("test"));
        assert_eq!(p["rb"].table.defect(0), 3.13);
        assert_eq!(p["rb"].table.defect(1), 2.65);
        assert_eq!(p["cs"].table.defect(2), 2.47);
        assert_eq!(p["cs"].table.species, "cs");
    }

    #[test]
    fn config_errors() {
        for bad in ["s = 1", "[a]\nbogus = 1", "[a]\ns = x", "[a]\ns = -1", "[a\ns=1", "[a]\n[a]", "[a]\nnoequals"] {
            assert!(matches!(parse_config(bad, "t"), Err(Error::Config(_))), "{bad}");
        }
    }

    #[test]
    fn letter_l_and_numbered_keys() {
        assert_eq!(defect_key_l("l"), Some(8));
        assert_eq!(defect_key_l("l12"), Some(12));
        assert_eq!(defect_key_l("j"), None);
        assert_eq!(defect_key_l("sp"), None);
    }

    #[test]
    fn state_tokens() {
        assert_eq!(parse_state("50s").unwrap(), AtomicState::axial(50, 0).unwrap());
        assert_eq!(parse_state("51p").unwrap(), AtomicState::axial(51, 1).unwrap());
        assert_eq!(parse_state("110g").unwrap(), AtomicState::axial(110, 4).unwrap());
        assert_eq!(parse_state("2P").unwrap(), AtomicState::axial(2, 1).unwrap());
        for bad in ["s", "50", "50j", "50sp", "2d", "1p", "0s", "x1s"] {
            assert!(parse_state(bad).is_err(), "{bad}");
        }
        let (a, b) = parse_state_pair("50s:51p").unwrap();
        assert_eq!((a.n, b.n, b.l), (50, 51, 1));
    }

    #[test]
    fn units() {
        assert!((parse_frequency("47kHz").unwrap() - 2.0 * PI * 47e3).abs() < 1e-9);
        assert_eq!(parse_frequency("3e5 rad/s").unwrap(), 3e5);
        assert_eq!(parse_frequency("1e-3Hz").unwrap(), 2.0 * PI * 1e-3);
        assert!(parse_frequency("47").is_err());
        assert!(parse_frequency("47 furlongs").is_err());
        assert!(parse_frequency("1eV").is_err());
        assert_eq!(parse_energy("0.5Hartree").unwrap(), 0.5);
        assert!((parse_energy("27.211386245988eV").unwrap() - 1.0).abs() < 1e-15);
        let w = parse_detuning("1Ha").unwrap();
        assert!((w / constants::hartree_to_rad_per_s(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_count("0").unwrap(), 0);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-1").is_err());
    }

    #[test]
    fn explicit_file_and_search_dirs() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        let file = dir.join(CONFIG_FILE_NAME);
        std::fs::write(&file, "[rb]\ns = 3.13\n").unwrap();
        let p = load_species("rb", Some(&file)).unwrap();
        assert_eq!(p.table.defect(0), 3.13);
        assert_eq!(load_species("hydrogen", Some(&file)).unwrap().origin, "bundled");
        assert!(load_species("nope", Some(&file)).is_err());
        let paths = split_search_path(&format!("{}::/nonexistent.cfg", dir.display()));
        assert_eq!(paths, vec![file.clone(), PathBuf::from("/nonexistent.cfg")]);
    }
}
