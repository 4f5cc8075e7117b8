//! Reference values from the published comparison tables, shared by the
//! acceptance suite in `tests/acceptance.rs`.

/// `(nodes, colours, old, jl, new)` in thousands of states. The first row's
/// New cell is printed as ">1" and is stored as `None`.
pub const FIXED_COLOURS_TABLE: [(u64, u64, u64, u64, Option<u64>); 13] = [
    (8, 8, 2, 1, None),
    (16, 10, 8, 5, Some(1)),
    (32, 10, 33, 18, Some(5)),
    (64, 10, 122, 61, Some(17)),
    (128, 10, 432, 187, Some(52)),
    (256, 10, 1462, 553, Some(154)),
    (512, 10, 4780, 1579, Some(439)),
    (1024, 10, 15157, 4374, Some(1211)),
    (2048, 10, 46813, 11829, Some(3261)),
    (4096, 10, 141264, 31326, Some(8601)),
    (8192, 10, 417577, 81461, Some(22282)),
    (16384, 10, 1211700, 208470, Some(56819)),
    (32768, 10, 3458200, 525991, Some(142884)),
];

/// `(nodes, colours, old, jl, new)` in millions of states.
pub const LINEAR_COLOURS_TABLE: [(u64, u64, u64, u64, u64); 13] = [
    (260, 26, 381, 190, 53),
    (280, 28, 622, 318, 90),
    (300, 30, 987, 518, 148),
    (320, 32, 11531, 820, 251),
    (340, 34, 2323, 1271, 389),
    (360, 36, 3456, 1928, 608),
    (380, 38, 5054, 2870, 926),
    (400, 40, 7271, 4201, 1759),
    (420, 42, 10309, 6053, 2584),
    (440, 44, 14420, 8596, 3724),
    (460, 46, 19919, 12047, 5838),
    (480, 48, 27199, 16675, 8625),
    (500, 50, 36742, 22818, 12200),
];

/// The linear-table cell known to be misprinted: `(nodes, column)`.
pub const FLAGGED_LINEAR_CELL: (u64, &str) = (320, "old");
