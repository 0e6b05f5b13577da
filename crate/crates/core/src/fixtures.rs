//! The four-sentence toy language used throughout the docs, examples and
//! tests: "cats eat rats", "rats fear cats", "mathematicians prove
//! theorems", "doctors heal wounds", written with one letter per word.

use crate::language::StochasticLanguage;
use crate::partition::Partition;
use crate::vocab::Vocabulary;

/// Word letters in id order.
pub const TOY_WORDS: [&str; 10] = ["c", "e", "r", "f", "m", "p", "t", "d", "h", "w"];
/// The four sentences, each with probability 1/4.
pub const TOY_SENTENCES: [&str; 4] = ["c e r", "r f c", "m p t", "d h w"];

#[derive(Debug, Clone)]
pub struct Toy {
    pub vocab: Vocabulary,
    pub language: StochasticLanguage,
    /// Animals / Science / Medicine.
    pub p1: Partition,
    /// Noun / Verb.
    pub p2: Partition,
    /// Nouns split by grammatical role: subject-only, object-only, both.
    pub p3: Partition,
}

pub fn toy() -> Toy {
    let vocab = Vocabulary::from_words(TOY_WORDS);
    let sequences = TOY_SENTENCES.iter().map(|s| {
        s.split(' ')
            .map(|w| vocab.id(w).expect("toy word"))
            .collect::<Vec<_>>()
    });
    let language = StochasticLanguage::uniform(3, sequences).expect("toy language");
    let labels = |ls: &[&str]| ls.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    //                     c  e  r  f  m  p  t  d  h  w
    let p1 = Partition::from_assignment(
        labels(&["Animals", "Science", "Medicine"]),
        &[0, 0, 0, 0, 1, 1, 1, 2, 2, 2],
    )
    .expect("P1");
    let p2 = Partition::from_assignment(labels(&["Noun", "Verb"]), &[0, 1, 0, 1, 0, 1, 0, 0, 1, 0])
        .expect("P2");
    let p3 = Partition::from_assignment(
        labels(&["Subject", "Object", "Ambiguous", "Verb"]),
        &[2, 3, 2, 3, 0, 3, 1, 0, 3, 1],
    )
    .expect("P3");
    Toy {
        vocab,
        language,
        p1,
        p2,
        p3,
    }
}
