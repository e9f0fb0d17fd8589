//! Aspect-level polarity: only words the parser linked to a topic keyword
//! are scored.

use crate::corpus::{DependencyTriple, Topic};
use crate::sentiment::{score_tokens, Lexicon, Polarity};

/// A retained `word --relation--> keyword` link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatedWord {
    pub word: String,
    pub relation: String,
    pub keyword: String,
    pub sentence_idx: usize,
}

/// Words of one document that are grammatically tied to the topic keywords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AspectContext {
    pub doc_id: String,
    pub keywords: Vec<String>,
    pub related_words: Vec<RelatedWord>,
}

/// Keep triples whose keyword belongs to `topic` and whose word is a
/// content word. Repeated triples are all kept.
///
/// `doc_id` names the owning document; all triples are expected to belong
/// to it.
pub fn filter_triples(doc_id: &str, triples: &[DependencyTriple], topic: &Topic) -> AspectContext {
    let related_words = triples
        .iter()
        .filter(|t| t.word_pos.is_content() && topic.keywords.contains(&t.keyword))
        .map(|t| RelatedWord {
            word: t.word.clone(),
            relation: t.relation.clone(),
            keyword: t.keyword.clone(),
            sentence_idx: t.sentence_idx,
        })
        .collect();
    AspectContext { doc_id: doc_id.to_string(), keywords: topic.keywords.clone(), related_words }
}

/// Mean of the isolated polarity of each related word.
///
/// Every related word contributes, with words absent from the lexicon
/// counting as neutral. Negators and intensifiers have no context here,
/// so each word is scored on its own.
pub fn score_aspect_level(lexicon: &Lexicon, context: &AspectContext) -> Polarity {
    if context.related_words.is_empty() {
        return Polarity::NEUTRAL;
    }
    let sum: f64 = context
        .related_words
        .iter()
        .map(|r| score_tokens(lexicon, &[r.word.as_str()]).value())
        .sum();
    Polarity::clamped(sum / context.related_words.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::PosTag;
    use std::collections::{HashMap, HashSet};

    fn triple(word: &str, rel: &str, kw: &str, pos: PosTag) -> DependencyTriple {
        DependencyTriple {
            doc_id: "d1".into(),
            sentence_idx: 0,
            word: word.into(),
            relation: rel.into(),
            keyword: kw.into(),
            word_pos: pos,
        }
    }

    fn topic(title: &str) -> Topic {
        Topic::new(title.replace(' ', "-"), title, 1, vec![title.into()]).unwrap()
    }

    #[test]
    fn content_words_with_matching_keyword_survive() {
        let triples = vec![
            triple("illegal", "nsubj", "abortion", PosTag::Adj),
            triple("the", "det", "abortion", PosTag::Other),
            triple("chaotic", "amod", "brexit", PosTag::Adj),
        ];
        let ctx = filter_triples("d1", &triples, &topic("abortion"));
        assert_eq!(ctx.related_words.len(), 1);
        assert_eq!(ctx.related_words[0].word, "illegal");
    }

    #[test]
    fn both_keywords_of_two_word_topics() {
        let triples = vec![
            triple("rights", "amod", "gay", PosTag::Noun),
            triple("legalizing", "dobj", "marriage", PosTag::Verb),
            triple("rights", "amod", "gay", PosTag::Noun),
        ];
        let ctx = filter_triples("d1", &triples, &topic("gay marriage"));
        let words: Vec<_> = ctx.related_words.iter().map(|r| r.word.as_str()).collect();
        assert_eq!(words, vec!["rights", "legalizing", "rights"]);
    }

    #[test]
    fn aspect_mean() {
        let entries: HashMap<String, f64> =
            [("illegal".to_string(), -0.5), ("ban".to_string(), -0.4)].into_iter().collect();
        let lex = Lexicon::new(entries, HashSet::new(), HashMap::new()).unwrap();
        let t = topic("abortion");
        let triples = vec![
            triple("illegal", "nsubj", "abortion", PosTag::Adj),
            triple("ban", "dobj", "abortion", PosTag::Verb),
        ];
        let v = score_aspect_level(&lex, &filter_triples("d1", &triples, &t)).value();
        assert!((v - -0.45).abs() < 1e-15);

        assert_eq!(score_aspect_level(&lex, &filter_triples("d1", &[], &t)).value(), 0.0);
        let unmatched = vec![triple("laws", "compound", "abortion", PosTag::Noun)];
        assert_eq!(score_aspect_level(&lex, &filter_triples("d1", &unmatched, &t)).value(), 0.0);
    }
}
