use proptest::prelude::*;
use serp_audit::corpus::{
    format_topics, format_triples, parse_documents, parse_topics, parse_triples, topic_distribution, Corpus,
    DependencyTriple, Document, Engine, PosTag, Topic, ValidationError, SLATE_LEN,
};
use serp_audit::synth::{generate, Shape, TopicSpec};

/// Topics with `queries[i]` queries each and arbitrary non-blank bodies.
fn corpus_parts() -> impl Strategy<Value = (Vec<Document>, Vec<Topic>)> {
    (prop::collection::vec(1usize..=3, 1..=3), prop::collection::vec("\\PC{1,40}", 1..=8), any::<bool>()).prop_map(
        |(queries, bodies, flip)| {
            let mut topics = Vec::new();
            let mut docs = Vec::new();
            for (ti, &nq) in queries.iter().enumerate() {
                let id = format!("topic{ti}");
                let qs: Vec<String> = (0..nq).map(|q| format!("{id}-q{q}")).collect();
                let sign = if flip && ti % 2 == 1 { -1 } else { 1 };
                topics.push(Topic::new(&id, format!("Topic {ti} title"), sign, qs.clone()).unwrap());
                for engine in Engine::ALL {
                    for q in &qs {
                        for rank in 1..=SLATE_LEN as u32 {
                            let body = bodies[(rank as usize + docs.len()) % bodies.len()].clone();
                            let body = if body.trim().is_empty() { format!("x{body}") } else { body };
                            docs.push(Document {
                                doc_id: format!("{q}-{rank}"),
                                engine,
                                topic_id: id.clone(),
                                query: q.clone(),
                                rank,
                                title: format!("\"title\" {rank}"),
                                body,
                            });
                        }
                    }
                }
            }
            (docs, topics)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip(parts in corpus_parts()) {
        let (docs, topics) = parts;
        let corpus = Corpus::from_parts(docs, topics.clone(), Vec::new()).unwrap();
        let mut buf = Vec::new();
        corpus.write_documents(&mut buf).unwrap();
        let reparsed = parse_documents(std::str::from_utf8(&buf).unwrap(), "mem").unwrap();
        let again = Corpus::from_parts(reparsed, topics, Vec::new()).unwrap();
        prop_assert_eq!(again, corpus);
    }

    #[test]
    fn topics_round_trip(parts in corpus_parts()) {
        let topics = parts.1;
        prop_assert_eq!(parse_topics(&format_topics(&topics), "mem").unwrap(), topics);
    }

    #[test]
    fn distribution_totals_match_document_counts(parts in corpus_parts()) {
        let corpus = Corpus::from_parts(parts.0, parts.1, Vec::new()).unwrap();
        for engine in Engine::ALL {
            let total: usize = topic_distribution(&corpus).iter().map(|t| t.count(engine)).sum();
            prop_assert_eq!(total, corpus.document_count(engine));
        }
    }

    #[test]
    fn dropping_one_engines_slate_breaks_pairing(parts in corpus_parts(), pick in any::<prop::sample::Index>(), engine_b in any::<bool>()) {
        let (docs, topics) = parts;
        let engine = if engine_b { Engine::B } else { Engine::A };
        let queries: Vec<String> = topics.iter().flat_map(|t| t.query_ids.clone()).collect();
        let victim = pick.get(&queries).clone();
        let kept: Vec<Document> = docs.into_iter().filter(|d| !(d.engine == engine && d.query == victim)).collect();
        let err = Corpus::from_parts(kept, topics, Vec::new()).unwrap_err();
        prop_assert_eq!(err, ValidationError::MissingPair { query: victim, present: engine.other(), missing: engine });
    }

    #[test]
    fn triples_round_trip(words in prop::collection::vec("[a-z][a-z'-]{0,8}", 1..20)) {
        let triples: Vec<DependencyTriple> = words
            .iter()
            .enumerate()
            .map(|(i, w)| DependencyTriple {
                doc_id: format!("d{}", i % 3),
                sentence_idx: i,
                word: w.clone(),
                relation: "nmod:of".into(),
                keyword: "brexit".into(),
                word_pos: [PosTag::Noun, PosTag::Verb, PosTag::Adj, PosTag::Adv, PosTag::Other][i % 5],
            })
            .collect();
        let back: Vec<DependencyTriple> =
            parse_triples(&format_triples(&triples), "mem").unwrap().into_iter().map(|(_, t)| t).collect();
        prop_assert_eq!(back, triples);
    }

    #[test]
    fn generated_corpora_validate(seed in any::<u64>()) {
        let shape = Shape { topics: vec![TopicSpec::new("gun_control", "Gun control", 1, 30), TopicSpec::new("trump", "Trump", -1, 10)] };
        let corpus = generate(&shape, seed).to_corpus().unwrap();
        prop_assert_eq!(corpus.query_count(), 4);
        prop_assert_eq!(corpus.document_count(Engine::A), 40);
    }
}

#[test]
fn mini_corpus_files_load() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/mini");
    let corpus = serp_audit::corpus::load_corpus(
        &dir.join("documents.jsonl"),
        &dir.join("topics.tsv"),
        Some(&dir.join("triples.tsv")),
    )
    .unwrap();
    assert_eq!(corpus.topics().count(), 3);
    assert_eq!(corpus.query_count(), 6);
    assert_eq!(corpus.documents().len(), 120);
}
