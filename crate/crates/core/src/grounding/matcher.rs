use super::{Entity, GroundedInstruction, NavCommand, TurnList, ZoneLexicon};

/// Tokens a prohibition trigger may look ahead for its turn word.
pub const PROHIBITION_WINDOW: usize = 4;

const STRAIGHT: &[&str] = &[
    "go straight",
    "move straight",
    "go ahead",
    "proceed in a straight line",
    "go in a straight line",
    "move in a straight line",
    "proceed straight",
    "proceed ahead",
    "proceed forward",
    "keep straight",
    "keep going straight",
    "keep going",
    "keep moving forward",
    "continue straight",
    "continue ahead",
    "continue forward",
    "go forward",
    "move forward",
    "move ahead",
    "head straight",
    "walk straight",
    "drive straight",
    "straight ahead",
    "straight on",
    "straight",
];

const RIGHT: &[&str] = &[
    "go right",
    "turn right",
    "move right",
    "take a right",
    "right turn",
    "go rightward",
    "go rightwards",
    "take the right",
    "take right",
    "head right",
    "bear right",
    "veer right",
    "hang a right",
    "make a right",
    "turn to the right",
    "turn to your right",
    "go to the right",
    "rightward",
    "rightwards",
    "right",
];

const LEFT: &[&str] = &[
    "turn left",
    "left turn",
    "take a left",
    "move left",
    "head left",
    "go leftward",
    "go leftwards",
    "go left",
    "take the left",
    "take left",
    "bear left",
    "veer left",
    "hang a left",
    "make a left",
    "turn to the left",
    "turn to your left",
    "go to the left",
    "leftward",
    "leftwards",
    "left",
];

const BACKWARD: &[&str] = &[
    "go down",
    "move down",
    "go back",
    "go backward",
    "go backwards",
    "move back",
    "move backward",
    "move backwards",
    "head back",
    "turn back",
    "turn around",
    "make a u turn",
    "do a u turn",
    "u turn",
    "back up",
    "reverse",
    "backward",
    "backwards",
];

/// Words that open a prohibition ("do not", "don't", "avoid taking", "skip",
/// "not to take", "no right", ...).
const TRIGGERS: &[&str] = &["not", "dont", "avoid", "skip", "never", "no", "ignore", "bypass"];

/// Tokens that end a clause; a prohibition never reaches past one.
const CLAUSE_BREAKS: &[&str] = &["then", "and", "but", "after", "before", "until"];

/// Table of motion phrases with their unified entity.
pub fn synonym_table() -> Vec<(&'static str, NavCommand)> {
    let groups: [(&[&str], NavCommand); 4] = [
        (STRAIGHT, NavCommand::Straight),
        (RIGHT, NavCommand::Right),
        (LEFT, NavCommand::Left),
        (BACKWARD, NavCommand::Backward),
    ];
    groups
        .iter()
        .flat_map(|(phrases, cmd)| phrases.iter().map(move |p| (*p, *cmd)))
        .collect()
}

/// Lowercases, drops apostrophes, turns other punctuation into spaces and
/// splits on whitespace.
pub fn normalize_text(text: &str) -> Vec<String> {
    let cleaned: String = text
        .chars()
        .filter(|c| *c != '\'' && *c != '\u{2019}')
        .map(|c| {
            if c.is_alphanumeric() {
                c.to_lowercase().next().unwrap_or(c)
            } else {
                ' '
            }
        })
        .collect();
    cleaned.split_whitespace().map(str::to_string).collect()
}

#[derive(Debug, Clone)]
enum Target {
    Command(NavCommand),
    Zone(String),
}

/// Longest-match scanner over motion phrases and zone names.
#[derive(Debug, Clone)]
pub struct Matcher {
    phrases: Vec<(Vec<String>, Target)>,
    window: usize,
}

impl Matcher {
    pub fn new(lexicon: &ZoneLexicon) -> Self {
        let mut phrases: Vec<(Vec<String>, Target)> = synonym_table()
            .into_iter()
            .map(|(p, c)| (normalize_text(p), Target::Command(c)))
            .collect();
        for name in lexicon.names() {
            phrases.push((normalize_text(name), Target::Zone(name.to_string())));
        }
        // longest first; stable sort keeps table order among equal lengths
        phrases.sort_by(|a, b| b.0.len().cmp(&a.0.len()));
        Self {
            phrases,
            window: PROHIBITION_WINDOW,
        }
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    fn longest_at(&self, tokens: &[String], at: usize) -> Option<(usize, &Target)> {
        self.phrases.iter().find_map(|(words, target)| {
            let end = at + words.len();
            (end <= tokens.len() && tokens[at..end] == words[..]).then_some((words.len(), target))
        })
    }

    /// Handles a prohibition trigger at `at`. Returns the consumed length and
    /// the emitted marker, if any.
    fn prohibition_at(&self, tokens: &[String], at: usize) -> Option<(usize, Option<NavCommand>)> {
        if !TRIGGERS.contains(&tokens[at].as_str()) {
            return None;
        }
        let start = at + 1;
        let stop = (start + self.window).min(tokens.len());
        let mut i = start;
        while i < stop {
            let tok = tokens[i].as_str();
            if CLAUSE_BREAKS.contains(&tok) {
                return None;
            }
            let side = match tok {
                "right" | "rightward" | "rightwards" => Some(NavCommand::NR),
                "left" | "leftward" | "leftwards" => Some(NavCommand::NL),
                _ => None,
            };
            if let Some(marker) = side {
                let mut end = i + 1;
                if end < tokens.len() && matches!(tokens[end].as_str(), "turn" | "turns" | "one") {
                    end += 1;
                }
                return Some((end - at, Some(marker)));
            }
            // a forbidden non-turn motion ("do not go straight") has no marker
            if let Some((len, Target::Command(c))) = self.longest_at(tokens, i) {
                if matches!(c, NavCommand::Straight | NavCommand::Backward) {
                    return Some((i + len - at, None));
                }
            }
            i += 1;
        }
        None
    }

    /// Entities in textual order.
    pub fn scan(&self, text: &str) -> Vec<Entity> {
        let tokens = normalize_text(text);
        let mut out = Vec::new();
        let mut at = 0;
        while at < tokens.len() {
            if let Some((len, marker)) = self.prohibition_at(&tokens, at) {
                out.extend(marker.map(Entity::Command));
                at += len;
                continue;
            }
            match self.longest_at(&tokens, at) {
                Some((len, target)) => {
                    out.push(match target {
                        Target::Command(c) => Entity::Command(*c),
                        Target::Zone(z) => Entity::Zone(z.clone()),
                    });
                    at += len;
                }
                None => at += 1,
            }
        }
        out
    }
}

/// All entities of `text` in order, zones included.
pub fn entity_sequence(text: &str, lexicon: &ZoneLexicon) -> Vec<Entity> {
    Matcher::new(lexicon).scan(text)
}

/// Turns and destination of an instruction. The first zone mentioned is the
/// destination; its pose comes from the lexicon.
pub fn extract_entities(text: &str, lexicon: &ZoneLexicon) -> GroundedInstruction {
    let mut turns = Vec::new();
    let mut zone = None;
    for entity in entity_sequence(text, lexicon) {
        match entity {
            Entity::Command(c) => turns.push(c),
            Entity::Zone(z) => {
                zone.get_or_insert(z);
            }
        }
    }
    let goal = zone.as_deref().and_then(|z| lexicon.get(z));
    GroundedInstruction {
        turns: TurnList(turns),
        zone,
        goal,
    }
}
