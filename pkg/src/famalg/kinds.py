from enum import Enum


class IdentityKind(str, Enum):
    PRE_ANTI_FLEXIBLE_FAMILY = "pre-anti-flexible-family"
    DENDRIFORM_FAMILY = "dendriform-family"
    RELATIVE_ANTI_FLEXIBLE = "relative-anti-flexible"
    RELATIVE_PRE_ANTI_FLEXIBLE = "relative-pre-anti-flexible"
    RELATIVE_DENDRIFORM = "relative-dendriform"
    LEFT_PRE_LIE_FAMILY = "left-pre-lie-family"
    RIGHT_PRE_LIE_FAMILY = "right-pre-lie-family"
    RELATIVE_PRE_LIE = "relative-pre-lie"
    RELATIVE_RIGHT_SYMMETRIC = "relative-right-symmetric"
    RELATIVE_LIE = "relative-lie"
    ORDINARY_PRE_ANTI_FLEXIBLE = "ordinary-pre-anti-flexible"
    ORDINARY_DENDRIFORM = "ordinary-dendriform"
    ORDINARY_ANTI_FLEXIBLE = "ordinary-anti-flexible"

    def __str__(self):
        return self.value


K = IdentityKind

# product name -> index arity that each kind needs
REQUIRED_PRODUCTS = {
    K.PRE_ANTI_FLEXIBLE_FAMILY: {"prec": 1, "succ": 1},
    K.DENDRIFORM_FAMILY: {"prec": 1, "succ": 1},
    K.RELATIVE_ANTI_FLEXIBLE: {"dot": 2},
    K.RELATIVE_PRE_ANTI_FLEXIBLE: {"prec": 2, "succ": 2},
    K.RELATIVE_DENDRIFORM: {"prec": 2, "succ": 2},
    K.LEFT_PRE_LIE_FAMILY: {"dot": 1},
    K.RIGHT_PRE_LIE_FAMILY: {"dot": 1},
    K.RELATIVE_PRE_LIE: {"dot": 2},
    K.RELATIVE_RIGHT_SYMMETRIC: {"dot": 2},
    K.RELATIVE_LIE: {"bracket": 2},
    K.ORDINARY_PRE_ANTI_FLEXIBLE: {"prec": 0, "succ": 0},
    K.ORDINARY_DENDRIFORM: {"prec": 0, "succ": 0},
    K.ORDINARY_ANTI_FLEXIBLE: {"dot": 0},
}


def as_kind(kind) -> IdentityKind:
    if isinstance(kind, IdentityKind):
        return kind
    try:
        return IdentityKind(kind)
    except ValueError:
        pass
    # also accept enum member names and CamelCase tags such as "RelativeLie"
    norm = str(kind).replace("-", "").replace("_", "").lower()
    for k in IdentityKind:
        if k.name.replace("_", "").lower() == norm:
            return k
    raise ValueError(f"unknown identity kind {kind!r}")
