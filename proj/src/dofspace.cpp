#include <ddr/dofspace.hpp>

namespace ddr
{

  namespace
  {
    void push(DofLayout & layout, Slot slot, EntityRef ent, int local, int degree, int ncomp, int size)
    {
      DofBlock b;
      b.slot = slot;
      b.entity = ent;
      b.local = local;
      b.degree = degree;
      b.ncomp = ncomp;
      b.offset = layout.total;
      b.size = size;
      layout.blocks.push_back(b);
      layout.total += size;
    }

    int edge_poly(int d) { return d < 0 ? 0 : d + 1; }
  } // namespace

  const DofBlock & DofLayout::block(Slot slot, int local) const
  {
    for (const auto & b : blocks) {
      if (b.slot == slot && b.local == local) return b;
    }
    throw InvalidArgument("DofLayout::block: no such block");
  }

  Eigen::VectorBlock<const VectorXd> DofLayout::at(const VectorXd & v, Slot slot, int local) const
  {
    const DofBlock & b = block(slot, local);
    return v.segment(b.offset, b.size);
  }

  DofLayout devgrad_layout(const Mesh & mesh, int iT, int k)
  {
    const Cell & T = mesh.cell(iT);
    DofLayout layout;
    layout.tag = SpaceTag::DevGrad;
    layout.k = k;
    layout.cell = iT;
    for (size_t i = 0; i < T.vertices.size(); i++) {
      EntityRef ent{EntityKind::Vertex, T.vertices[i]};
      push(layout, Slot::VertexValue, ent, static_cast<int>(i), 0, 3, 3);
      push(layout, Slot::VertexGradient, ent, static_cast<int>(i), 0, 9, 9);
    }
    for (size_t i = 0; i < T.edges.size(); i++) {
      EntityRef ent{EntityKind::Edge, T.edges[i]};
      push(layout, Slot::EdgeTangent, ent, static_cast<int>(i), k - 1, 1, edge_poly(k - 1));
      push(layout, Slot::EdgeNormal, ent, static_cast<int>(i), k, 2, 2 * edge_poly(k));
      push(layout, Slot::EdgeGradient, ent, static_cast<int>(i), k, 4, 4 * edge_poly(k));
    }
    for (size_t i = 0; i < T.faces.size(); i++) {
      EntityRef ent{EntityKind::Face, T.faces[i]};
      push(layout, Slot::FaceNormal, ent, static_cast<int>(i), k, 1, poly_dim(2, k));
      push(layout, Slot::FaceTangent, ent, static_cast<int>(i), k - 1, 2, 2 * poly_dim(2, k - 1));
      push(layout, Slot::FaceDivergence, ent, static_cast<int>(i), k - 1, 1, poly_dim(2, k - 1));
    }
    push(layout, Slot::CellValue, EntityRef{EntityKind::Cell, iT}, 0, k - 1, 3, 3 * poly_dim(3, k - 1));
    return layout;
  }

  DofLayout symcurl_layout(const Mesh & mesh, int iT, int k)
  {
    const Cell & T = mesh.cell(iT);
    DofLayout layout;
    layout.tag = SpaceTag::SymCurl;
    layout.k = k;
    layout.cell = iT;
    for (size_t i = 0; i < T.vertices.size(); i++) {
      EntityRef ent{EntityKind::Vertex, T.vertices[i]};
      push(layout, Slot::VertexTraceless, ent, static_cast<int>(i), 0, 9, 8);
    }
    for (size_t i = 0; i < T.edges.size(); i++) {
      EntityRef ent{EntityKind::Edge, T.edges[i]};
      push(layout, Slot::EdgeMatrix, ent, static_cast<int>(i), k, 4, 4 * edge_poly(k));
      push(layout, Slot::EdgeNormalTangent, ent, static_cast<int>(i), k + 1, 2, 2 * edge_poly(k + 1));
      push(layout, Slot::EdgeC, ent, static_cast<int>(i), k + 1, 4, 4 * edge_poly(k + 1));
    }
    for (size_t i = 0; i < T.faces.size(); i++) {
      EntityRef ent{EntityKind::Face, T.faces[i]};
      push(layout, Slot::FaceRT, ent, static_cast<int>(i), k + 1, 2, FaceSpaceDim::RT(k + 1));
      push(layout, Slot::FaceCG, ent, static_cast<int>(i), k, 4, FaceSpaceDim::CGtrim(k));
    }
    push(layout, Slot::CellSR, EntityRef{EntityKind::Cell, iT}, 0, k, 9, CellSpaceDim::SRtrim(k));
    return layout;
  }

  DofLayout divdiv_layout(const Mesh & mesh, int iT, int k)
  {
    const Cell & T = mesh.cell(iT);
    DofLayout layout;
    layout.tag = SpaceTag::DivDiv;
    layout.k = k;
    layout.cell = iT;
    for (size_t i = 0; i < T.edges.size(); i++) {
      EntityRef ent{EntityKind::Edge, T.edges[i]};
      push(layout, Slot::EdgeSym, ent, static_cast<int>(i), k + 1, 3, 3 * edge_poly(k + 1));
    }
    for (size_t i = 0; i < T.faces.size(); i++) {
      EntityRef ent{EntityKind::Face, T.faces[i]};
      push(layout, Slot::FaceValue, ent, static_cast<int>(i), k + 1, 1, poly_dim(2, k + 1));
      push(layout, Slot::FaceD, ent, static_cast<int>(i), k + 1, 1, poly_dim(2, k + 1));
    }
    push(layout, Slot::CellHtrim, EntityRef{EntityKind::Cell, iT}, 0, k, 9, CellSpaceDim::Htrim(k));
    return layout;
  }

  int devgrad_dim_formula(int nv, int ne, int nf, int k)
  {
    return 12 * nv + (7 * k + 6) * ne + (2 * k * k + 3 * k + 1) * nf +
           (k * k * k + 3 * k * k + 2 * k) / 2;
  }

  int symcurl_dim_formula(int nv, int ne, int nf, int k)
  {
    return 8 * nv + (10 * k + 16) * ne + (3 * k * k + 8 * k + 3) * nf +
           (8 * k * k * k + 33 * k * k + 25 * k) / 6;
  }

  int divdiv_dim_formula(int ne, int nf, int k)
  {
    int cell_block = (k == 0) ? 0 : (k * k * k + 5 * k * k + 5 * k - 3);
    return (3 * k + 6) * ne + (k * k + 5 * k + 6) * nf + cell_block;
  }

} // namespace ddr
