//! Tokenization shared by keyword extraction, lexicon matching and the
//! sentence splitter.
//!
//! A token is a whitespace-delimited chunk, lowercased, with leading and
//! trailing non-alphanumeric characters removed. Interior punctuation such
//! as the hyphen in `pro-choice` or the apostrophe in `don't` survives.

/// Strip leading/trailing non-alphanumeric characters from `raw`.
pub fn trim_token(raw: &str) -> &str {
    raw.trim_matches(|c: char| !c.is_alphanumeric())
}

/// Iterate over the normalized tokens of `text`, skipping chunks that are
/// pure punctuation.
pub fn tokens(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split_whitespace().filter_map(|chunk| {
        let trimmed = trim_token(chunk);
        if trimmed.is_empty() {
            None
        } else {
            Some(trimmed.to_lowercase())
        }
    })
}

/// Collect [`tokens`] into a vector.
pub fn tokenize(text: &str) -> Vec<String> {
    tokens(text).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_outer_punctuation_only() {
        assert_eq!(
            tokenize("\"Pro-choice\" groups don't (always) agree..."),
            vec!["pro-choice", "groups", "don't", "always", "agree"]
        );
    }

    #[test]
    fn unicode_whitespace_and_case() {
        assert_eq!(tokenize("Travel\u{00A0}BAN\u{2003}Écoles"), vec!["travel", "ban", "écoles"]);
    }

    #[test]
    fn punctuation_only_chunks_vanish() {
        assert!(tokenize(" -- ... !! ").is_empty());
        assert!(tokenize("").is_empty());
    }
}
