from defdist.gallery.matrices import (
    GalleryKind,
    GallerySpec,
    build_matrix,
    embedded_kahan,
    grcar,
    kahan,
)
