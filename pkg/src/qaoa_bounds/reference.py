"""Published per-subgraph reference values used for regression checks.

Each row: (p, index, best_cut, total_edges, f_fixed, f_opt, env_count,
optimal angles in degrees as (gamma_1, beta_1, gamma_2, beta_2, ...)).
``f_opt`` is None where the tree value is already optimal.
"""

REFERENCE_ROWS = [
    (1, 0, 5, 5, 0.6924, None, 1, (35.0, 22.0)),
    (1, 1, 4, 5, 0.6369, 0.6467, 2, (-211.0, 108.0)),
    (1, 2, 4, 5, 0.5813, 0.6163, 1, (-28.0, 164.0)),
    (3, 0, 29, 29, 0.7924, None, 1, (156.0, -35.0, -46.0, -27.0, -54.0, -14.0)),
    (2, 0, 13, 13, 0.7559, 0.7559, 1, (28.0, 58.0, 52.0, 73.0)),
    (2, 1, 9, 10, 0.6456, 0.662, 141, (-35.0, -75.0, 89.0, -99.0)),
    (2, 2, 6, 7, 0.4541, 0.7, 18, (36.0, 46.0, 110.0, 33.0)),
    (2, 3, 13, 13, 0.7448, 0.7462, 1, (154.0, 60.0, 132.0, 16.0)),
    (2, 4, 12, 13, 0.7502, 0.7509, 137, (208.0, 30.0, 51.0, 105.0)),
    (2, 5, 9, 10, 0.63, 0.6564, 38, (35.0, -13.0, -83.0, 9.0)),
    (2, 6, 9, 10, 0.6358, 0.6605, 148, (-144.0, -76.0, 94.0, -81.0)),
    (2, 7, 6, 7, 0.4258, 0.7492, 1, (217.0, 42.0, 107.0, -28.0)),
    (2, 8, 11, 12, 0.7919, 0.8038, 1, (-33.0, -62.0, 121.0, -106.0)),
    (2, 9, 12, 13, 0.7334, 0.7386, 12, (-155.0, 29.0, -133.0, 75.0)),
    (2, 10, 13, 13, 0.7339, 0.7399, 1, (49.0, 18.0, 159.0, 40.0)),
    (2, 11, 12, 13, 0.7396, 0.7422, 112, (-26.0, 30.0, 132.0, 75.0)),
    (2, 12, 13, 13, 0.7334, 0.7409, 1, (230.0, 72.0, -21.0, -50.0)),
    (2, 13, 12, 12, 0.7902, 0.7959, 1073, (151.0, -34.0, 129.0, 20.0)),
    (2, 14, 12, 13, 0.7445, 0.7468, 11, (-152.0, -60.0, 51.0, 15.0)),
    (2, 15, 12, 13, 0.7445, 0.7469, 135, (152.0, 60.0, -51.0, 75.0)),
    (2, 16, 12, 13, 0.7442, 0.7466, 791, (207.0, -61.0, 50.0, 15.0)),
    (2, 17, 8, 9, 0.7125, 0.7273, 25, (-213.0, 67.0, 116.0, 16.0)),
    (2, 18, 9, 10, 0.6047, 0.6614, 2, (-39.0, -55.0, -109.0, 70.0)),
    (2, 19, 9, 10, 0.6207, 0.6554, 18, (-33.0, 11.0, 75.0, 80.0)),
    (2, 20, 8, 9, 0.6998, 0.7209, 157, (219.0, -59.0, -126.0, -25.0)),
    (2, 21, 9, 10, 0.6257, 0.659, 23, (147.0, -14.0, 80.0, 8.0)),
    (2, 22, 4, 6, 0.5739, 0.6666, 1, (115.0, 51.0, 79.0, -24.0)),
    (2, 23, 11, 12, 0.7777, 0.784, 1, (30.0, -28.0, 54.0, -106.0)),
    (2, 24, 11, 12, 0.7851, 0.7996, 45, (-33.0, -63.0, -60.0, -74.0)),
    (2, 25, 11, 12, 0.7823, 0.7904, 1, (-148.0, -62.0, 57.0, -74.0)),
    (2, 26, 12, 13, 0.7235, 0.7341, 5, (129.0, 16.0, 20.0, 52.0)),
    (2, 27, 12, 13, 0.7282, 0.736, 3, (154.0, -28.0, 133.0, 13.0)),
    (2, 28, 12, 13, 0.7279, 0.7358, 35, (26.0, -28.0, 47.0, -103.0)),
    (2, 29, 12, 13, 0.723, 0.7351, 6, (-129.0, -17.0, 159.0, 52.0)),
    (2, 30, 13, 13, 0.7222, 0.7425, 1, (39.0, 51.0, -71.0, -20.0)),
    (2, 31, 12, 12, 0.7778, 0.7833, 172, (27.0, 57.0, 49.0, -19.0)),
    (2, 32, 12, 13, 0.7344, 0.739, 29, (-26.0, -61.0, -48.0, 104.0)),
    (2, 33, 12, 13, 0.734, 0.7388, 231, (154.0, 61.0, 132.0, -76.0)),
    (2, 34, 12, 13, 0.7286, 0.7378, 31, (-130.0, 72.0, 160.0, -40.0)),
    (2, 35, 11, 12, 0.7831, 0.7852, 30, (152.0, -33.0, 130.0, 18.0)),
    (2, 36, 11, 12, 0.784, 0.7866, 319, (152.0, 57.0, -50.0, -19.0)),
    (2, 37, 11, 12, 0.7859, 0.789, 1161, (-29.0, 33.0, -50.0, 19.0)),
    (2, 38, 12, 13, 0.7381, 0.7431, 115, (28.0, 61.0, -130.0, 14.0)),
    (2, 39, 12, 13, 0.7385, 0.7433, 163, (28.0, 61.0, 230.0, -76.0)),
    (2, 40, 7, 9, 0.7017, 0.7206, 6, (-32.0, -68.0, -64.0, -75.0)),
    (2, 41, 9, 10, 0.5954, 0.6528, 1, (-51.0, -7.0, 18.0, -64.0)),
    (2, 42, 8, 9, 0.6823, 0.6885, 9, (35.0, -28.0, -126.0, 21.0)),
    (2, 43, 7, 9, 0.6876, 0.6914, 6, (-148.0, -62.0, 54.0, 18.0)),
    (2, 44, 10, 12, 0.7641, 0.7764, 3, (150.0, -27.0, -54.0, 75.0)),
    (2, 45, 11, 12, 0.7677, 0.7739, 1, (152.0, 62.0, -52.0, -105.0)),
    (2, 46, 10, 11, 0.826, 0.8348, 58, (-148.0, -59.0, 55.0, -71.0)),
    (2, 47, 11, 12, 0.7687, 0.7827, 2, (-32.0, 27.0, -57.0, 15.0)),
    (2, 48, 10, 12, 0.7784, 0.7964, 9, (146.0, -27.0, 119.0, 15.0)),
    (2, 49, 10, 12, 0.7779, 0.7954, 56, (146.0, -27.0, -61.0, -15.0)),
    (2, 50, 11, 12, 0.776, 0.7868, 21, (32.0, 63.0, -123.0, 16.0)),
    (2, 51, 9, 11, 0.8228, 0.8624, 1, (-35.0, -65.0, 113.0, -17.0)),
    (2, 52, 11, 12, 0.7729, 0.7795, 1, (150.0, 62.0, -53.0, 74.0)),
    (2, 53, 12, 13, 0.7131, 0.7299, 1, (48.0, -73.0, -18.0, -39.0)),
    (2, 54, 12, 13, 0.7124, 0.7296, 2, (128.0, 15.0, -160.0, 36.0)),
    (2, 55, 12, 13, 0.7126, 0.7391, 3, (38.0, 52.0, 108.0, -71.0)),
    (2, 56, 11, 12, 0.7645, 0.7679, 5, (26.0, 59.0, 47.0, -17.0)),
    (2, 57, 12, 13, 0.7122, 0.7305, 1, (-129.0, -16.0, 161.0, 52.0)),
    (2, 58, 12, 13, 0.7223, 0.7334, 11, (-154.0, 27.0, -134.0, -13.0)),
    (2, 59, 11, 12, 0.7674, 0.7702, 16, (-26.0, -59.0, -48.0, 17.0)),
    (2, 60, 12, 13, 0.7223, 0.7334, 7, (-26.0, 28.0, 133.0, 77.0)),
    (2, 61, 12, 13, 0.7178, 0.7325, 9, (52.0, 16.0, 159.0, 37.0)),
    (2, 62, 13, 13, 0.7107, 0.7825, 1, (-39.0, -50.0, 72.0, -69.0)),
    (2, 63, 11, 12, 0.7722, 0.7758, 27, (153.0, -32.0, -48.0, -18.0)),
    (2, 64, 11, 12, 0.7741, 0.7776, 177, (153.0, -122.0, 132.0, 108.0)),
    (2, 65, 12, 12, 0.7649, 0.7727, 10, (206.0, -57.0, -133.0, -19.0)),
    (2, 66, 12, 13, 0.7235, 0.7349, 24, (51.0, 16.0, -21.0, -38.0)),
    (2, 67, 10, 12, 0.7784, 0.7794, 37, (28.0, 58.0, 50.0, -18.0)),
    (2, 68, 11, 11, 0.8153, 0.8347, 90, (150.0, 55.0, -48.0, -22.0)),
    (2, 69, 10, 12, 0.7775, 0.7786, 39, (152.0, -32.0, -49.0, 73.0)),
    (2, 70, 11, 12, 0.7799, 0.7811, 136, (-208.0, 58.0, 130.0, 108.0)),
    (2, 71, 11, 11, 0.8181, 0.8346, 576, (29.0, -35.0, 49.0, -21.0)),
    (2, 72, 11, 12, 0.7818, 0.7834, 127, (151.0, -32.0, 130.0, 18.0)),
    (2, 73, 12, 13, 0.7316, 0.7399, 12, (27.0, 62.0, -130.0, -77.0)),
    (2, 74, 12, 13, 0.7324, 0.7403, 19, (-28.0, 28.0, 130.0, 77.0)),
    (2, 75, 7, 8, 0.7559, 0.796, 5, (142.0, -30.0, 127.0, 25.0)),
    (2, 76, 7, 9, 0.6522, 0.666, 1, (-158.0, 25.0, 46.0, -78.0)),
    (2, 77, 10, 12, 0.7552, 0.7674, 2, (208.0, -64.0, 52.0, 14.0)),
    (2, 78, 9, 11, 0.8105, 0.8395, 1, (-147.0, -65.0, 242.0, -16.0)),
    (2, 79, 11, 12, 0.7579, 0.7657, 1, (-153.0, -63.0, 50.0, 15.0)),
    (2, 80, 10, 11, 0.8185, 0.8261, 8, (-148.0, -60.0, 55.0, 18.0)),
    (2, 81, 10, 11, 0.8207, 0.8302, 44, (-32.0, 120.0, -236.0, 72.0)),
    (2, 82, 10, 11, 0.8154, 0.8213, 5, (-31.0, -59.0, -53.0, 19.0)),
    (2, 83, 10, 12, 0.7621, 0.7797, 2, (-148.0, 26.0, -122.0, -14.0)),
    (2, 84, 11, 12, 0.7605, 0.7726, 1, (-149.0, -63.0, -126.0, -105.0)),
    (2, 85, 10, 12, 0.7694, 0.7831, 10, (-32.0, 27.0, -57.0, 15.0)),
    (2, 86, 9, 11, 0.8147, 0.8584, 5, (-35.0, -66.0, 113.0, 74.0)),
    (2, 87, 12, 13, 0.7024, 0.7339, 1, (-142.0, -51.0, 107.0, -19.0)),
    (2, 88, 10, 12, 0.7604, 0.7639, 6, (-26.0, -59.0, 133.0, -17.0)),
    (2, 89, 12, 13, 0.7067, 0.7282, 1, (54.0, 14.0, -21.0, 55.0)),
    (2, 90, 11, 12, 0.7639, 0.7663, 6, (-153.0, 31.0, 48.0, 17.0)),
    (2, 91, 10, 12, 0.7615, 0.7647, 2, (154.0, -31.0, 133.0, 17.0)),
    (2, 92, 11, 12, 0.7556, 0.762, 2, (25.0, 59.0, -134.0, 18.0)),
    (2, 93, 11, 11, 0.8017, 0.8208, 5, (-152.0, -56.0, 47.0, 22.0)),
    (2, 94, 11, 11, 0.8041, 0.8203, 44, (-27.0, 35.0, 132.0, -21.0)),
    (2, 95, 11, 12, 0.7617, 0.7679, 10, (26.0, -32.0, -134.0, 18.0)),
    (2, 96, 10, 11, 0.8127, 0.8235, 35, (-152.0, -56.0, 229.0, -110.0)),
    (2, 97, 10, 12, 0.7738, 0.7745, 5, (-152.0, -59.0, -131.0, -17.0)),
    (2, 98, 10, 11, 0.8109, 0.8256, 33, (-29.0, 34.0, 132.0, 69.0)),
    (2, 99, 10, 12, 0.7734, 0.7742, 10, (28.0, -31.0, -131.0, 107.0)),
    (2, 100, 10, 11, 0.8112, 0.822, 39, (-28.0, 34.0, -49.0, -70.0)),
    (2, 101, 9, 11, 0.7943, 0.8324, 1, (147.0, 66.0, 115.0, -74.0)),
    (2, 102, 9, 11, 0.7976, 0.82, 1, (-149.0, -65.0, 59.0, 16.0)),
    (2, 103, 9, 10, 0.8452, 0.8548, 5, (-30.0, -59.0, -51.0, 20.0)),
    (2, 104, 10, 11, 0.8026, 0.8094, 1, (-31.0, 29.0, -53.0, 17.0)),
    (2, 105, 9, 10, 0.8522, 0.8608, 18, (-31.0, 32.0, -53.0, 20.0)),
    (2, 106, 10, 11, 0.8108, 0.8177, 4, (32.0, -30.0, 54.0, 72.0)),
    (2, 107, 8, 10, 0.8545, 0.8828, 1, (214.0, -62.0, -119.0, -18.0)),
    (2, 108, 10, 12, 0.7473, 0.7669, 1, (148.0, -115.0, 124.0, 14.0)),
    (2, 109, 9, 11, 0.8061, 0.8538, 3, (35.0, 67.0, 68.0, 74.0)),
    (2, 110, 10, 11, 0.7917, 0.8011, 5, (-26.0, 33.0, 133.0, -19.0)),
    (2, 111, 10, 12, 0.7461, 0.7541, 1, (-25.0, -61.0, -45.0, 16.0)),
    (2, 112, 10, 11, 0.793, 0.8051, 1, (152.0, -33.0, -46.0, -20.0)),
    (2, 113, 11, 11, 0.7895, 0.8079, 3, (-154.0, 34.0, -134.0, -21.0)),
    (2, 114, 9, 11, 0.8068, 0.8136, 2, (28.0, -33.0, -132.0, 20.0)),
    (2, 115, 10, 10, 0.8316, 0.8667, 15, (-29.0, 35.0, 134.0, -23.0)),
    (2, 116, 10, 11, 0.8068, 0.8179, 4, (-151.0, -57.0, -132.0, -110.0)),
    (2, 117, 9, 11, 0.8038, 0.8111, 3, (-153.0, -57.0, -132.0, 70.0)),
    (2, 118, 9, 10, 0.8407, 0.8475, 1, (150.0, 58.0, -51.0, -20.0)),
    (2, 119, 8, 10, 0.848, 0.8799, 1, (35.0, -27.0, 62.0, 73.0)),
    (2, 120, 9, 10, 0.827, 0.8566, 1, (151.0, 56.0, 134.0, 22.0)),
    (2, 121, 7, 9, 0.8771, 0.8935, 1, (-32.0, -61.0, -57.0, 108.0)),
    (2, 122, 9, 9, 0.834, 0.8911, 1, (-28.0, -55.0, -44.0, -66.0)),
]

# Published number of relevant environments (summed over center classes).
RELEVANT_ENVIRONMENTS = {1: 4, 2: 7058}

# Published degenerate maxima of the tree subgraph, degrees, gamma in [0, 360)
# and beta in [0, 90), interleaved (gamma_1, beta_1, ...).
TREE_MAXIMA_DEG = {
    1: [(35.3, 22.5), (144.7, 22.5), (215.3, 67.5), (324.7, 67.5)],
    2: [(28.0, 31.8, 51.4, 16.8), (28.0, 31.8, 231.4, 73.2),
        (152.0, 31.8, 128.6, 73.2), (152.0, 31.8, 308.6, 16.8),
        (208.0, 58.2, 51.4, 73.2), (208.0, 58.2, 231.4, 16.8),
        (332.0, 58.2, 128.6, 16.8), (332.0, 58.2, 308.6, 73.2)],
}

# Published per-graph bounds for the worked example graph (depth: bound).
FIG1_BOUNDS = {1: 0.759, 2: 0.822}

# Published symmetric-sector dimensions of the tree subgraph by depth.
TREE_SYM_DIMENSIONS = {0: 3, 1: 21, 2: 903, 3: 1_631_721}
