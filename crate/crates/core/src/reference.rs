//! Published values for `C_3` over `F_3`, used by `verify` and the acceptance suite.

use crate::algebra::{AlgebraError, UniPoly, Var};

/// `W^{(r)}(Z)` for `r = 1..=10`.
pub const GWE_Q3: [&str; 10] = [
    "2 Z^{18}(195 Z^{18} + 4212 Z^{12} + 4700 Z^9 + 5265 Z^6 + 390)",
    "13 Z^{24}(67797 Z^{16} + 243000 Z^{15} + 597780 Z^{14} + 933120 Z^{13} + 1151610 Z^{12} \
     + 991440 Z^{11} + 816480 Z^{10} + 428400 Z^9 + 182250 Z^8 + 116640 Z^7 + 43200 Z^6 \
     + 14580 Z^4 + 760 Z^3 + 360)",
    "10Z^{26}(408114369 Z^{14} + 615347208 Z^{13} + 471425994 Z^{12} + 230935536 Z^{11} \
     + 79511991 Z^{10} + 20839572 Z^9 + 5231304 Z^8 + 968760 Z^7 + 237978 Z^6 + 50544 Z^5 \
     + 9360 Z^4 + 52 Z + 108)",
    "Z^{27}(304888261329 Z^{13} + 152054622720 Z^{12} + 37402159860 Z^{11} + 5713746480 Z^{10} \
     + 641358900 Z^9 + 69893928 Z^8 + 7076160 Z^7 + 627120 Z^6 + 89505 Z^5 + 40)",
    "26 Z^{33}(49159423665 Z^7 + 8099569140 Z^6 + 649260360 Z^5 + 31541400 Z^4 \
     + 1366565 Z^3 + 73548 Z^2 + 2430 Z + 120)",
    "2 Z^{35}(237163797936 Z^5 + 12886036860 Z^4 + 334019790 Z^3 + 4956120 Z^2 + 104975 Z + 2340)",
    "10 Z^{36}(1800649161 Z^4 + 31769712 Z^3 + 252954 Z^2 + 936 Z + 13)",
    "13 Z^{38}(5557197 Z^2 + 30160 Z + 60)",
    "4 Z^{39}(7371 Z + 10)",
    "Z^{40}",
];

/// `d_1 .. d_10`.
pub const HAMMING_Q3: [u32; 10] = [18, 24, 26, 27, 33, 35, 36, 38, 39, 40];

/// `B_j(T)` for `j = 1..=22`; `B_j = 0` beyond.
pub const B_Q3: [&str; 22] = [
    "40(T^9-1)",
    "780(T^8-1)",
    "9880(T^7-1)",
    "130(T^7+702T^6-703)",
    "936(5 T^6 +698 T^5 -703)",
    "780(109 T^5 + 4812 T^4 - 4921)",
    "1560 (2 T^5 + 663 T^4 + 11286 T^3 - 11951)",
    "585(T - 1)(241 T^3 + 16333 T^2 + 131461 T + 131461)",
    "520(T - 1)(55 T^3 + 5500 T^2 + 138016 T + 525844)",
    "104(T-1)(110T^3 + 8435T^2 + 399125T + 4410326)",
    "3120(T - 1)(T^3 + 100T^2 + 6211T + 171775)",
    "260(T - 1)(2T^3 + 326T^2 + 29837T + 1921619)",
    "40(T - 1)(T^3 + 352T^2 + 61426T + 9659872)",
    "1080(T - 1)(T^2 + 508T + 230582)",
    "18720(T-1)(4T + 7103)",
    "1170(4T + 49739)(T - 1)",
    "20540520(T-1)",
    "5705700(T-1)",
    "1201200(T-1)",
    "180180(T-1)",
    "17160(T-1)",
    "780(T-1)",
];

/// `(i, a_i(T))` with `W = 1 + (T-1) sum_i a_i(T) Z^i`; unlisted `a_i` vanish.
pub const A_Q3: [(usize, &str); 16] = [
    (18, "780"),
    (24, "1170(4 T - 3)"),
    (26, "1080(T - 3)(T - 9)"),
    (27, "40(T^3 - 26 T^2 + 442 T - 884)"),
    (28, "189540(T - 3)"),
    (30, "936(100 T^2 - 600 T + 909)"),
    (31, "505440(T - 3)(T - 6)"),
    (32, "5265(T - 3)( 17 T^2 - 160 T + 513)"),
    (33, "3120(T - 3)(T^3 + 84 T^2 - 972 T + 3000)"),
    (34, "63180(T - 3)( T^3 - 5 T^2 - 45 T + 249)"),
    (35, "936(T - 3)( 5 T^4 + 243 T^3 - 6408 T^2 + 51654 T - 142020)"),
    (36, "130(T^6 + 523 T^5 - 15635 T^4 + 199500 T^3 - 1349544 T^2 + 4639614 T - 6020826)"),
    (37, "9360(T - 3)(T^5 - 30 T^4 + 405 T^3 - 3132 T^2 + 13932 T - 27864)"),
    (38, "780(T - 3)(T^6 - 33 T^5 + 507 T^4 - 4698 T^3 + 28242 T^2 - 105678 T + 189054)"),
    (
        39,
        "40(T - 3)(T^7 - 35 T^6 + 585 T^5 - 6096 T^4 + 43320 T^3 - 214344 T^2 + 695448 T - 1128816)",
    ),
    (
        40,
        "(T - 3)(T^8 - 36 T^7 + 633 T^6 - 7110 T^5 + 56241 T^4 - 325134 T^3 + 1371006 T^2 \
         - 3936114 T + 5856786)",
    ),
];

pub fn gwe_q3() -> Result<Vec<UniPoly>, AlgebraError> {
    GWE_Q3.iter().map(|s| UniPoly::parse(Var::Z, s)).collect()
}

pub fn b_q3() -> Result<Vec<UniPoly>, AlgebraError> {
    B_Q3.iter().map(|s| UniPoly::parse(Var::T, s)).collect()
}

pub fn a_q3() -> Result<Vec<(usize, UniPoly)>, AlgebraError> {
    A_Q3.iter()
        .map(|(i, s)| Ok((*i, UniPoly::parse(Var::T, s)?)))
        .collect()
}
