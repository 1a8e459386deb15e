"""Published dimensions of the binary subfield subcodes C_{8,2}(s) of H(64, s).

Each entry is (s, dim C_{8,2}(s), dim H(64, s)) for the 70 values of s in
256..511 at which the subcode dimension changes.  Used as a regression
fixture; nothing in the library reads it except the verifiers.
"""

Q, R = 8, 2

TABLE1: tuple[tuple[int, int, int], ...] = (
    (256, 7, 229),
    (288, 13, 261),
    (292, 19, 265),
    (320, 25, 293),
    (324, 28, 297),
    (328, 34, 301),
    (336, 36, 309),
    (352, 42, 325),
    (356, 48, 329),
    (360, 54, 333),
    (364, 60, 337),
    (368, 66, 341),
    (376, 72, 349),
    (378, 74, 351),
    (384, 80, 357),
    (392, 86, 365),
    (400, 92, 373),
    (402, 98, 375),
    (408, 104, 381),
    (410, 110, 383),
    (416, 116, 389),
    (418, 122, 391),
    (420, 128, 393),
    (424, 134, 397),
    (428, 140, 401),
    (432, 146, 405),
    (434, 152, 407),
    (436, 158, 409),
    (438, 164, 411),
    (440, 170, 413),
    (442, 176, 415),
    (444, 182, 417),
    (448, 188, 421),
    (450, 194, 423),
    (452, 200, 425),
    (456, 206, 429),
    (457, 212, 430),
    (458, 218, 431),
    (460, 224, 433),
    (462, 226, 435),
    (464, 232, 437),
    (466, 238, 439),
    (468, 244, 441),
    (470, 250, 443),
    (472, 256, 445),
    (473, 262, 446),
    (474, 268, 447),
    (475, 274, 448),
    (480, 280, 453),
    (482, 286, 455),
    (484, 292, 457),
    (486, 295, 459),
    (488, 301, 461),
    (489, 307, 462),
    (490, 313, 463),
    (491, 319, 464),
    (492, 325, 465),
    (493, 331, 466),
    (496, 337, 469),
    (498, 343, 471),
    (500, 349, 473),
    (502, 355, 475),
    (504, 361, 477),
    (505, 367, 478),
    (506, 373, 479),
    (507, 379, 480),
    (508, 385, 481),
    (509, 391, 482),
    (510, 397, 483),
    (511, 403, 484),
)


def table1_dict() -> dict[int, tuple[int, int]]:
    return {s: (k0, k) for s, k0, k in TABLE1}
