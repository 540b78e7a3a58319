//! The sports bookmark context: 3 users, 2 interests, 4 sites, 11 triples.
//!
//! u1 Ed, u2 Leo, u3 Max; i1 soccer, i2 hockey; s1 soccer.com, s2 nhl.com,
//! s3 fifa.com, s4 hockeycanada.ca. Leo never bookmarked s4.

use crate::triadic::TriadicContext;

pub const SPORTS_TSV: &str = "\
# user\tinterest\tsite
u1\ti1\ts1
u1\ti2\ts2
u1\ti1\ts3
u1\ti2\ts4
u2\ti1\ts1
u2\ti2\ts2
u2\ti1\ts3
u3\ti1\ts1
u3\ti2\ts2
u3\ti1\ts3
u3\ti2\ts4
";

pub fn sports() -> TriadicContext {
    crate::ingestion::parse_triples(SPORTS_TSV.as_bytes())
        .expect("fixture parses")
        .context
}
