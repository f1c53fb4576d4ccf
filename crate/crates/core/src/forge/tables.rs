//! Built-in demand points and covering-model optima for the 100 benchmark
//! instances. Rows are indexed by instance number minus one.

/// `(V in m³, W in kg)` per instance.
pub const DEMANDS: [(u32, u32); 100] = [
    (17, 783),
    (5, 1579),
    (13, 4289),
    (30, 5076),
    (10, 3463),
    (15, 3242),
    (18, 1869),
    (10, 1519),
    (30, 4329),
    (12, 2433),
    (27, 113),
    (19, 2268),
    (20, 2199),
    (11, 4103),
    (3, 4713),
    (18, 2346),
    (23, 3829),
    (3, 2062),
    (27, 4300),
    (16, 3941),
    (1, 3087),
    (15, 4276),
    (10, 3962),
    (12, 4268),
    (18, 4348),
    (20, 589),
    (3, 1480),
    (25, 4872),
    (3, 2655),
    (25, 412),
    (22, 2579),
    (8, 2806),
    (4, 366),
    (6, 4291),
    (16, 3398),
    (11, 3266),
    (1, 1765),
    (26, 2738),
    (24, 1525),
    (25, 182),
    (18, 3000),
    (7, 4081),
    (4, 566),
    (28, 2693),
    (12, 3546),
    (19, 3131),
    (29, 3708),
    (18, 1230),
    (28, 279),
    (20, 865),
    (23, 1069),
    (13, 299),
    (12, 919),
    (30, 16452),
    (14, 2617),
    (2, 2913),
    (29, 14500),
    (6, 1088),
    (1, 949),
    (5, 253),
    (28, 3647),
    (16, 11706),
    (25, 15575),
    (10, 1643),
    (13, 8389),
    (9, 5016),
    (1, 1500),
    (26, 11823),
    (2, 3193),
    (15, 6144),
    (24, 11663),
    (22, 3816),
    (1, 4500),
    (11, 8031),
    (25, 14057),
    (28, 15980),
    (4, 3476),
    (29, 1025),
    (17, 2959),
    (26, 1695),
    (26, 4933),
    (25, 4002),
    (3, 1578),
    (18, 4082),
    (30, 14555),
    (29, 14766),
    (4, 1417),
    (18, 3307),
    (17, 4401),
    (8, 1428),
    (20, 12843),
    (9, 4156),
    (15, 11353),
    (20, 4866),
    (26, 12692),
    (22, 11209),
    (26, 932),
    (14, 4888),
    (29, 11311),
    (13, 5656),
];

/// Reference optimal TU counts per instance, in default catalog order.
pub const REFERENCE_OPTIMA: [[u32; 6]; 100] = [
    [1, 5, 1, 1, 0, 2],
    [0, 1, 1, 1, 0, 0],
    [0, 1, 0, 5, 1, 0],
    [1, 0, 0, 14, 1, 0],
    [0, 1, 1, 0, 0, 3],
    [0, 0, 1, 7, 0, 0],
    [0, 0, 0, 0, 1, 7],
    [1, 1, 1, 1, 2, 0],
    [1, 0, 0, 14, 1, 0],
    [2, 0, 0, 3, 2, 0],
    [1, 1, 1, 1, 0, 9],
    [6, 0, 0, 0, 0, 5],
    [1, 0, 0, 4, 1, 4],
    [3, 0, 1, 2, 1, 0],
    [5, 0, 0, 0, 0, 0],
    [7, 4, 2, 0, 0, 0],
    [0, 0, 1, 9, 1, 1],
    [0, 1, 1, 0, 0, 0],
    [1, 1, 3, 2, 1, 6],
    [6, 0, 3, 2, 0, 0],
    [2, 0, 1, 0, 0, 0],
    [0, 0, 1, 7, 0, 0],
    [0, 1, 1, 0, 0, 3],
    [2, 0, 3, 2, 0, 0],
    [2, 4, 6, 0, 0, 0],
    [1, 0, 0, 4, 1, 4],
    [0, 2, 0, 0, 0, 0],
    [5, 2, 0, 6, 1, 1],
    [0, 0, 1, 0, 1, 0],
    [4, 2, 2, 0, 0, 6],
    [1, 0, 1, 10, 0, 0],
    [0, 0, 0, 2, 1, 1],
    [2, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 2, 1],
    [6, 0, 3, 2, 0, 0],
    [3, 0, 1, 2, 1, 0],
    [2, 0, 0, 0, 0, 0],
    [7, 0, 0, 9, 0, 0],
    [10, 0, 0, 0, 0, 5],
    [4, 2, 2, 0, 0, 6],
    [2, 4, 6, 0, 0, 0],
    [1, 1, 0, 1, 0, 1],
    [2, 1, 0, 0, 0, 0],
    [5, 0, 3, 5, 4, 0],
    [2, 0, 0, 3, 2, 0],
    [0, 1, 10, 0, 1, 0],
    [2, 2, 1, 0, 8, 3],
    [2, 0, 0, 2, 5, 1],
    [4, 1, 1, 1, 1, 7],
    [1, 0, 0, 4, 1, 4],
    [0, 10, 1, 1, 1, 1],
    [0, 0, 0, 1, 1, 4],
    [1, 1, 0, 0, 0, 4],
    [21, 0, 0, 1, 1, 0],
    [2, 0, 0, 6, 0, 0],
    [3, 0, 0, 0, 0, 0],
    [2, 2, 1, 0, 8, 3],
    [3, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0],
    [0, 1, 1, 1, 0, 0],
    [5, 0, 3, 5, 4, 0],
    [6, 1, 3, 0, 0, 1],
    [17, 0, 0, 1, 1, 0],
    [1, 1, 1, 1, 2, 0],
    [4, 0, 0, 2, 1, 1],
    [2, 2, 1, 0, 1, 0],
    [0, 0, 0, 0, 1, 0],
    [7, 0, 0, 9, 0, 0],
    [2, 0, 1, 0, 0, 0],
    [0, 0, 1, 7, 0, 0],
    [10, 0, 0, 6, 0, 0],
    [1, 0, 1, 10, 0, 0],
    [0, 0, 0, 0, 3, 0],
    [3, 0, 1, 2, 1, 0],
    [17, 0, 0, 1, 1, 0],
    [4, 9, 1, 3, 1, 0],
    [2, 0, 0, 0, 1, 0],
    [1, 13, 5, 0, 0, 0],
    [3, 0, 1, 1, 4, 1],
    [8, 1, 0, 2, 2, 3],
    [7, 0, 0, 9, 0, 0],
    [5, 2, 0, 6, 1, 1],
    [0, 2, 0, 0, 0, 0],
    [2, 4, 6, 0, 0, 0],
    [1, 0, 0, 14, 1, 0],
    [2, 2, 1, 0, 8, 3],
    [2, 1, 0, 0, 0, 0],
    [2, 4, 6, 0, 0, 0],
    [3, 0, 1, 1, 4, 1],
    [0, 4, 0, 0, 1, 0],
    [13, 0, 0, 1, 1, 0],
    [1, 2, 3, 0, 0, 0],
    [8, 1, 1, 1, 0, 0],
    [1, 1, 0, 8, 1, 0],
    [7, 0, 0, 9, 0, 0],
    [1, 0, 1, 10, 0, 0],
    [8, 1, 0, 2, 2, 3],
    [2, 0, 0, 6, 0, 0],
    [2, 2, 1, 0, 8, 3],
    [0, 1, 0, 5, 2, 0],
];
