/// Documents shipped with the binary; `verify-suite all` runs each one.
pub const BUNDLED: [(&str, &str); 5] = [
    ("norm_sqrt2", include_str!("../fixtures/norm_sqrt2.json")),
    ("quaternion_sqrt2", include_str!("../fixtures/quaternion_sqrt2.json")),
    ("triples", include_str!("../fixtures/triples.json")),
    ("segre_f5", include_str!("../fixtures/segre_f5.json")),
    ("gamma_f2", include_str!("../fixtures/gamma_f2.json")),
];
