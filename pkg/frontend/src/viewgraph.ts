import { labelColor } from './colors';
import type { ApiNode, NodeLabel, QueryResultPayload } from './types';

export interface ViewNode {
  id: string;
  label: NodeLabel;
  name: string;
  color: string;
}

export interface ViewEdge {
  id: string; // `${headId}|${relation}|${tailId}`
  source: string;
  target: string;
  relation: string;
}

export interface MergeDelta {
  addedNodes: ViewNode[];
  addedEdges: ViewEdge[];
}

/**
 * Renderable graph state. The only way in is merging an API payload, so
 * everything on screen traces back to a response; merging is idempotent.
 */
export class ViewGraphModel {
  private nodes = new Map<string, ViewNode>();
  private edges = new Map<string, ViewEdge>();
  private expanded = new Map<string, number>(); // node id -> times expanded
  selectedId: string | null = null;

  get nodeList(): ViewNode[] {
    return [...this.nodes.values()];
  }

  get edgeList(): ViewEdge[] {
    return [...this.edges.values()];
  }

  get size(): { nodes: number; edges: number } {
    return { nodes: this.nodes.size, edges: this.edges.size };
  }

  clear(): void {
    this.nodes.clear();
    this.edges.clear();
    this.expanded.clear();
    this.selectedId = null;
  }

  hasNode(id: string): boolean {
    return this.nodes.has(id);
  }

  node(id: string): ViewNode | undefined {
    return this.nodes.get(id);
  }

  expansionCount(id: string): number {
    return this.expanded.get(id) ?? 0;
  }

  markExpanded(id: string): void {
    this.expanded.set(id, this.expansionCount(id) + 1);
  }

  select(id: string | null): void {
    this.selectedId = id;
  }

  merge(payload: QueryResultPayload): MergeDelta {
    const addedNodes: ViewNode[] = [];
    const addedEdges: ViewEdge[] = [];

    const addNode = (node: ApiNode) => {
      if (this.nodes.has(node.id)) return;
      const view: ViewNode = {
        id: node.id,
        label: node.label,
        name: node.name,
        color: labelColor(node.label),
      };
      this.nodes.set(node.id, view);
      addedNodes.push(view);
    };

    for (const center of payload.centers) addNode(center);
    for (const group of Object.values(payload.groups)) {
      for (const node of group ?? []) addNode(node);
    }
    for (const triple of payload.triples) {
      addNode(triple.head);
      addNode(triple.tail);
      const id = `${triple.head.id}|${triple.relation}|${triple.tail.id}`;
      if (!this.edges.has(id)) {
        const edge: ViewEdge = {
          id,
          source: triple.head.id,
          target: triple.tail.id,
          relation: triple.relation,
        };
        this.edges.set(id, edge);
        addedEdges.push(edge);
      }
    }
    return { addedNodes, addedEdges };
  }
}
