//! Feature inventory: the canonical profile's size, names and group sizes.

use std::collections::HashSet;

use aes_core::vector::{FeatureProfile, Group, NO_PROMPT, NO_PROMPT_L1};

use crate::support::{ensure, Check, Outcome};

pub fn checks() -> Vec<Check> {
    vec![
        ("canonical size and names", canonical),
        ("group sizes", group_sizes),
        ("table names", table_names),
        ("count-conflict resolution", composition),
        ("built-in rows and variants", builtin_rows),
    ]
}

/// POS features in table order.
const POS_TABLE: [&str; 27] = [
    "POS_adjectiveVariation", "POS_adverbVariation", "POS_correctedVerbVariation1",
    "POS_modifierVariation", "POS_nounVar", "POS_squaredVerbVar1", "POS_verbVar1", "POS_verbVar2",
    "POS_numLexicalWords", "POS_numNouns", "POS_numProperNouns", "POS_numPronouns",
    "POS_numPerPronouns", "POS_numAdjectives", "POS_numAdverbs", "POS_numConjunctions",
    "POS_numInterjections", "POS_numDeterminers", "POS_numPrepositions", "POS_numVerbs",
    "POS_numWhPronouns", "POS_numVerbsVBD", "POS_numVerbsVBG", "POS_numVerbsVBN",
    "POS_numVerbsVBP", "POS_numVerbsVBZ", "POS_numModalVerbs",
];

/// Syntactic features: the SLA column, then the other column.
const SYN_TABLE: [&str; 28] = [
    "SYN_avgSentenceLength", "SYN_MeanLengthofClauses", "SYN_MeanLengthofTunits",
    "SYN_ComplexNominalsPerClause", "SYN_CNPerTunit", "SYN_ComplexTunitRatio",
    "SYN_CoordinatePhrasesPerClause", "SYN_CoordPerTunit", "SYN_DependentClauseRatio",
    "SYN_DependentClausesPerTunit", "SYN_TunitComplexityRatio", "SYN_VPPerTunit",
    "SYN_numTunitsPerSen", "SYN_numClausesPerSen", "SYN_avgParseTreeHeightPerSen",
    "SYN_numSentences", "SYN_numConstitutentsPerSen", "SYN_numConjPPerSen", "SYN_avgNPSize",
    "SYN_numNPsPerSen", "SYN_numPPSize", "SYN_numPPsPerSen", "SYN_numRRCsPerSen",
    "SYN_numSBARsPerSen", "SYN_numSubtreesPerSen", "SYN_numVPSize", "SYN_numVPsPerSen",
    "SYN_WhPhrasesPerSen",
];

fn canonical() -> Outcome {
    let p = FeatureProfile::builtin("paper-114").ok_or("paper-114 is not built in")?;
    ensure(p.len() == 114, || format!("{} features", p.len()))?;
    ensure(p.include_prompt && p.include_l1, || "prompt and L1 switched off".into())?;
    let unique: HashSet<&String> = p.features.iter().collect();
    ensure(unique.len() == 114, || "duplicate names".into())?;
    p.resolve().map_err(|e| e.to_string())?;
    Ok("114 + prompt + L1".into())
}

fn group_sizes() -> Outcome {
    let p = FeatureProfile::builtin("paper-114").ok_or("paper-114 is not built in")?;
    let resolved = p.resolve().map_err(|e| e.to_string())?;
    let count = |groups: &[Group]| resolved.iter().filter(|(g, _)| groups.contains(g)).count();
    let got = [
        ("docLen", count(&[Group::DocLen]), 1),
        ("Word", count(&[Group::Word]), 5),
        ("POS", count(&[Group::Pos]), 27),
        ("Syn", count(&[Group::Syn]), 28),
        ("Disc", count(&Group::DISCOURSE), 49),
        ("Error", count(&[Group::Error]), 4),
    ];
    for (name, n, want) in got {
        ensure(n == want, || format!("{name}: {n} features, expected {want}"))?;
    }
    let disc = [
        (Group::DiscOverlap, 8),
        (Group::DiscRefex, 10),
        (Group::DiscConn, 7),
        (Group::DiscEntities, 16),
        (Group::DiscChains, 8),
    ];
    for (g, want) in disc {
        ensure(count(&[g]) == want, || format!("{}: {} features", g.label(), count(&[g])))?;
    }
    Ok(String::new())
}

fn table_names() -> Outcome {
    let p = FeatureProfile::builtin("pos").ok_or("pos is not built in")?;
    ensure(p.features == POS_TABLE, || "POS names or order differ".into())?;
    let p = FeatureProfile::builtin("syn").ok_or("syn is not built in")?;
    ensure(p.features == SYN_TABLE, || "Syn names or order differ".into())?;
    let transitions: Vec<String> = ["S", "O", "X", "A"]
        .iter()
        .flat_map(|a| ["S", "O", "X", "A"].map(|b| format!("DISC_trans{a}{b}")))
        .collect();
    ensure(Group::DiscEntities.names().iter().copied().eq(transitions.iter().map(String::as_str)), || "transition names".into())?;
    Ok(String::new())
}

/// Disc-Entities counts only the 16 transitions and Disc-Chains only the 8
/// proportions; the entity densities and the average chain length live in
/// the extended profile.
fn composition() -> Outcome {
    let canonical = FeatureProfile::builtin("paper-114").ok_or("paper-114 is not built in")?;
    let extended = FeatureProfile::builtin("extended").ok_or("extended is not built in")?;
    ensure(extended.len() == 119, || format!("extended has {}", extended.len()))?;
    let extra: Vec<&String> = extended.features.iter().filter(|f| !canonical.features.contains(f)).collect();
    let expected: Vec<&str> = Group::DiscEntityDensity
        .names()
        .iter()
        .chain(Group::DiscChainLength.names())
        .copied()
        .collect();
    ensure(extra.len() == 5 && extra.iter().all(|f| expected.contains(&f.as_str())), || {
        format!("extended adds {extra:?}")
    })?;
    ensure(canonical.features.iter().all(|f| extended.features.contains(f)), || {
        "extended drops a canonical feature".into()
    })?;
    Ok("114 = 1+5+27+28+49+4; extended 119".into())
}

fn builtin_rows() -> Outcome {
    let rows = [
        ("doclen", 1),
        ("word", 5),
        ("pos", 27),
        ("syn", 28),
        ("disc-all", 49),
        ("disc-overlap", 8),
        ("disc-refex", 10),
        ("disc-conn", 7),
        ("disc-entities", 16),
        ("disc-chains", 8),
        ("error", 4),
        ("paper-114", 114),
    ];
    for (name, n) in rows {
        for (suffix, prompt, l1) in [("", true, true), (NO_PROMPT, false, true), (NO_PROMPT_L1, false, false)] {
            let full = format!("{name}{suffix}");
            let p = FeatureProfile::builtin(&full).ok_or_else(|| format!("{full} is not built in"))?;
            ensure(p.len() == n, || format!("{full}: {} features, expected {n}", p.len()))?;
            ensure(p.include_prompt == prompt && p.include_l1 == l1, || format!("{full}: categorical switches"))?;
        }
    }
    Ok(String::new())
}
