use proptest::prelude::*;
use serp_audit::aspect::{filter_triples, score_aspect_level};
use serp_audit::corpus::{parse_triples, DependencyTriple, PosTag, Topic};
use serp_audit::sentiment::score_tokens;
use serp_audit::Lexicon;

const FIXTURE: &str = include_str!("fixtures/dependency_rows.tsv");

fn fixture_for(doc_id: &str) -> Vec<DependencyTriple> {
    parse_triples(FIXTURE, "dependency_rows.tsv")
        .unwrap()
        .into_iter()
        .map(|(_, t)| t)
        .filter(|t| t.doc_id == doc_id)
        .collect()
}

fn topic(title: &str) -> Topic {
    Topic::new(title.to_lowercase().replace(' ', "_"), title, 1, vec![format!("{title} q")]).unwrap()
}

fn kept(doc_id: &str, title: &str) -> Vec<(String, String, String)> {
    filter_triples(doc_id, &fixture_for(doc_id), &topic(title))
        .related_words
        .into_iter()
        .map(|r| (r.word, r.relation, r.keyword))
        .collect()
}

fn rows(items: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
    items.iter().map(|&(w, r, k)| (w.into(), r.into(), k.into())).collect()
}

#[test]
fn table_rows_for_abortion_and_brexit() {
    assert_eq!(
        kept("d-abortion", "Abortion"),
        rows(&[
            ("demand", "nmod:on", "abortion"),
            ("illegal", "nsubj", "abortion"),
            ("laws", "compound", "abortion"),
            ("ban", "dobj", "abortion"),
            ("restrict", "dobj", "abortion"),
        ])
    );
    assert_eq!(
        kept("d-brexit", "Brexit"),
        rows(&[
            ("negotiations", "compound", "brexit"),
            ("bill", "compound", "brexit"),
            ("risk", "nmod:of", "brexit"),
            ("chaotic", "amod", "brexit"),
            ("doubts", "compound", "brexit"),
        ])
    );
}

#[test]
fn table_rows_for_gay_marriage_use_both_keywords() {
    assert_eq!(
        kept("d-gay", "Gay marriage"),
        rows(&[
            ("rights", "amod", "gay"),
            ("community", "amod", "gay"),
            ("activist", "amod", "gay"),
            ("fans", "amod", "gay"),
            ("nice", "amod", "gay"),
            ("legalizing", "dobj", "marriage"),
            ("support", "nmod:for", "marriage"),
            ("recognize", "dobj", "marriage"),
            ("outlaw", "dobj", "marriage"),
            ("opposed", "dobj", "marriage"),
        ])
    );
}

#[test]
fn aspect_score_over_fixture() {
    let lex = Lexicon::reference();
    let ctx = filter_triples("d-abortion", &fixture_for("d-abortion"), &topic("Abortion"));
    let want: f64 = ctx.related_words.iter().map(|r| lex.polarity(&r.word).unwrap_or(0.0)).sum::<f64>()
        / ctx.related_words.len() as f64;
    assert_eq!(score_aspect_level(&lex, &ctx).value(), want);
    assert!(want < 0.0, "illegal dominates the abortion rows");
}

fn pos() -> impl Strategy<Value = PosTag> {
    prop_oneof![Just(PosTag::Noun), Just(PosTag::Verb), Just(PosTag::Adj), Just(PosTag::Adv), Just(PosTag::Other)]
}

fn triple() -> impl Strategy<Value = DependencyTriple> {
    (
        prop::sample::select(&["good", "bad", "illegal", "the", "laws", "nice", "xyz"][..]),
        prop::sample::select(&["amod", "nsubj", "det", "dobj"][..]),
        prop::sample::select(&["gay", "marriage", "abortion", "same-sex"][..]),
        pos(),
        0usize..5,
    )
        .prop_map(|(w, r, k, p, s)| DependencyTriple {
            doc_id: "d".into(),
            sentence_idx: s,
            word: w.into(),
            relation: r.into(),
            keyword: k.into(),
            word_pos: p,
        })
}

proptest! {
    #[test]
    fn filter_is_a_sound_idempotent_sub_multiset(triples in prop::collection::vec(triple(), 0..40)) {
        let t = topic("Gay marriage");
        let ctx = filter_triples("d", &triples, &t);
        let expected: Vec<&DependencyTriple> = triples
            .iter()
            .filter(|x| x.word_pos != PosTag::Other && t.keywords.contains(&x.keyword))
            .collect();
        prop_assert_eq!(ctx.related_words.len(), expected.len());
        for (r, x) in ctx.related_words.iter().zip(&expected) {
            prop_assert_eq!(&r.word, &x.word);
            prop_assert!(t.keywords.contains(&r.keyword));
        }
        let kept: Vec<DependencyTriple> = expected.into_iter().cloned().collect();
        let again = filter_triples("d", &kept, &t);
        prop_assert_eq!(again, ctx);
    }

    #[test]
    fn aspect_score_is_the_mean_of_isolated_word_scores(triples in prop::collection::vec(triple(), 0..40)) {
        let lex = Lexicon::reference();
        let ctx = filter_triples("d", &triples, &topic("Gay marriage"));
        let got = score_aspect_level(&lex, &ctx).value();
        if ctx.related_words.is_empty() {
            prop_assert_eq!(got, 0.0);
        } else {
            let want = ctx.related_words.iter().map(|r| score_tokens(&lex, &[r.word.as_str()]).value()).sum::<f64>()
                / ctx.related_words.len() as f64;
            prop_assert_eq!(got, want);
        }
    }
}
