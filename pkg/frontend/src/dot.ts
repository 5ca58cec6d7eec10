/**
 * Client-side layout for the neighbor graphs the service exports as
 * DOT.  The service emits one fixed dialect (digraph, a synthetic
 * "id" root, optional dashed style, quoted edge labels), so a full
 * DOT parser would be wasted here; two regexes cover it.
 */

export interface DotGraph {
  nodes: string[];
  edges: DotEdge[];
}

export interface DotEdge {
  src: string;
  dst: string;
  label: string;
  dashed: boolean;
}

const NODE_LINE = /^(\w+)(?:\s*\[[^\]]*\])?;$/;
const EDGE_LINE = /^(\w+)\s*->\s*(\w+)\s*\[label="([^"]*)"(?:,\s*style=dashed)?\];$/;

export function parseDot(text: string): DotGraph {
  const nodes: string[] = [];
  const edges: DotEdge[] = [];
  for (const raw of text.split('\n')) {
    const line = raw.trim();
    if (!line || line.startsWith('digraph') || line === '}' || line.startsWith('rankdir')) {
      continue;
    }
    const edge = EDGE_LINE.exec(line);
    if (edge) {
      edges.push({
        src: edge[1],
        dst: edge[2],
        label: edge[3],
        dashed: line.includes('style=dashed'),
      });
      continue;
    }
    const node = NODE_LINE.exec(line);
    if (node) nodes.push(node[1]);
  }
  return { nodes, edges };
}

interface Placed {
  x: number;
  y: number;
}

const COL_GAP = 130;
const ROW_GAP = 78;
const MARGIN = 46;
const NODE_R = 17;

/**
 * Rank nodes by breadth-first distance from the root and stack each
 * rank vertically, ranks running left to right like the DOT source's
 * rankdir.  Nodes unreachable from the root land in a final column.
 */
export function layoutGraph(graph: DotGraph): Map<string, Placed> {
  const ranks = new Map<string, number>();
  const adjacency = new Map<string, string[]>();
  for (const node of graph.nodes) adjacency.set(node, []);
  for (const edge of graph.edges) adjacency.get(edge.src)?.push(edge.dst);

  const root = graph.nodes.includes('id') ? 'id' : graph.nodes[0];
  if (root !== undefined) {
    ranks.set(root, 0);
    const queue = [root];
    while (queue.length) {
      const here = queue.shift()!;
      for (const next of adjacency.get(here) ?? []) {
        if (!ranks.has(next)) {
          ranks.set(next, ranks.get(here)! + 1);
          queue.push(next);
        }
      }
    }
  }
  const maxRank = Math.max(0, ...ranks.values());
  for (const node of graph.nodes) {
    if (!ranks.has(node)) ranks.set(node, maxRank + 1);
  }

  const byRank = new Map<number, string[]>();
  for (const node of graph.nodes) {
    const rank = ranks.get(node)!;
    const column = byRank.get(rank) ?? [];
    column.push(node);
    byRank.set(rank, column);
  }

  const placed = new Map<string, Placed>();
  const tallest = Math.max(1, ...[...byRank.values()].map((c) => c.length));
  for (const [rank, column] of byRank) {
    const top = MARGIN + ((tallest - column.length) * ROW_GAP) / 2;
    column.forEach((node, i) => {
      placed.set(node, { x: MARGIN + rank * COL_GAP, y: top + i * ROW_GAP });
    });
  }
  return placed;
}

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

export function dotToSvg(text: string): string {
  const graph = parseDot(text);
  const placed = layoutGraph(graph);

  let maxX = 0;
  let maxY = 0;
  for (const p of placed.values()) {
    maxX = Math.max(maxX, p.x);
    maxY = Math.max(maxY, p.y);
  }
  const width = maxX + MARGIN;
  const height = maxY + MARGIN;

  // bow parallel edges apart; a lone edge stays straight
  const parallel = new Map<string, number>();
  for (const edge of graph.edges) {
    const key = pairKey(edge);
    parallel.set(key, (parallel.get(key) ?? 0) + 1);
  }
  const seen = new Map<string, number>();

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="neighbor-graph">`,
    '<defs><marker id="arrow" viewBox="0 0 8 8" refX="7" refY="4" markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
      '<path d="M0,0 L8,4 L0,8 z" fill="currentColor"/></marker></defs>'
  );

  for (const edge of graph.edges) {
    const from = placed.get(edge.src);
    const to = placed.get(edge.dst);
    if (!from || !to) continue;
    const key = pairKey(edge);
    const index = seen.get(key) ?? 0;
    seen.set(key, index + 1);
    const bow = (index - (parallel.get(key)! - 1) / 2) * 22;
    parts.push(edgePath(edge, from, to, bow));
  }

  for (const node of graph.nodes) {
    const p = placed.get(node)!;
    if (node === 'id') {
      parts.push(`<circle cx="${p.x}" cy="${p.y}" r="4" class="root-node"/>`);
    } else {
      parts.push(
        `<circle cx="${p.x}" cy="${p.y}" r="${NODE_R}" class="graph-node"/>`,
        `<text x="${p.x}" y="${p.y + 4}" text-anchor="middle" class="node-label">${esc(node)}</text>`
      );
    }
  }

  parts.push('</svg>');
  return parts.join('\n');
}

function pairKey(edge: DotEdge): string {
  return edge.src < edge.dst ? `${edge.src}|${edge.dst}` : `${edge.dst}|${edge.src}`;
}

function edgePath(edge: DotEdge, from: Placed, to: Placed, bow: number): string {
  const cls = edge.dashed ? 'graph-edge initial-edge' : 'graph-edge';
  if (edge.src === edge.dst) {
    // self loop drawn above the node
    const x = from.x;
    const y = from.y - NODE_R;
    return (
      `<path d="M ${x - 8} ${y} C ${x - 22} ${y - 34}, ${x + 22} ${y - 34}, ${x + 8} ${y}"` +
      ` class="${cls}" fill="none" marker-end="url(#arrow)"/>` +
      `<text x="${x}" y="${y - 28}" text-anchor="middle" class="edge-label">${esc(edge.label)}</text>`
    );
  }
  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const len = Math.hypot(dx, dy) || 1;
  // shorten both ends to the node border
  const fx = from.x + (dx / len) * NODE_R;
  const fy = from.y + (dy / len) * NODE_R;
  const tx = to.x - (dx / len) * NODE_R;
  const ty = to.y - (dy / len) * NODE_R;
  // perpendicular control point offset; edges running right to left
  // flip sign so a 2-cycle's arcs separate instead of stacking
  const side = edge.src < edge.dst ? 1 : -1;
  const mx = (fx + tx) / 2 + (-dy / len) * bow * side;
  const my = (fy + ty) / 2 + (dx / len) * bow * side;
  return (
    `<path d="M ${fx} ${fy} Q ${mx} ${my} ${tx} ${ty}" class="${cls}" fill="none" marker-end="url(#arrow)"/>` +
    `<text x="${mx}" y="${my - 4}" text-anchor="middle" class="edge-label">${esc(edge.label)}</text>`
  );
}
