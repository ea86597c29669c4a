//! Compiles the guide's code listings as doc-tests.
//!
//! Each chapter becomes an empty module documented by the chapter's
//! Markdown, so `cargo test --doc -p limitshape-book` runs every snippet.

#[cfg(doctest)]
mod chapters {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/half-plane.md")]
    mod half_plane {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/regions.md")]
    mod regions {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/fortress.md")]
    mod fortress {}
    #[doc = include_str!("../../../book/src/four-vertex.md")]
    mod four_vertex {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
