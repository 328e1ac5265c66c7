import { ApiClient, ApiError } from './api';
import type { ApiNode, CooccurrenceLevel, CooccurrenceRow } from './types';
import { MergeDelta, ViewGraphModel } from './viewgraph';

export interface AppEvents {
  onGraphChanged?: (model: ViewGraphModel, delta: MergeDelta) => void;
  onCandidates?: (candidates: ApiNode[]) => void;
  onRows?: (rows: CooccurrenceRow[], level: CooccurrenceLevel) => void;
  onError?: (message: string) => void;
  onBusy?: (busy: boolean) => void;
}

/**
 * Explorer controller: search -> select -> expand, plus the co-occurrence
 * table. One in-flight request per action; responses that arrive after a
 * newer action started are discarded.
 */
export class ExplorerApp {
  readonly model = new ViewGraphModel();
  private actionToken = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly events: AppEvents = {},
  ) {}

  private nextToken(): number {
    this.actionToken += 1;
    return this.actionToken;
  }

  private stale(token: number): boolean {
    return token !== this.actionToken;
  }

  private fail(err: unknown): void {
    const message = err instanceof ApiError ? err.message : String(err);
    this.events.onError?.(message);
  }

  async search(q: string): Promise<ApiNode[]> {
    const token = this.nextToken();
    if (!q.trim()) {
      this.events.onCandidates?.([]);
      return [];
    }
    this.events.onBusy?.(true);
    try {
      const result = await this.api.search(q.trim());
      if (this.stale(token)) return [];
      this.events.onCandidates?.(result.centers);
      return result.centers;
    } catch (err) {
      if (!this.stale(token)) this.fail(err);
      return [];
    } finally {
      this.events.onBusy?.(false);
    }
  }

  /** Replace the view with the depth-1 neighborhood of a chosen node. */
  async select(node: ApiNode): Promise<void> {
    const token = this.nextToken();
    this.events.onBusy?.(true);
    try {
      const payload = await this.api.neighborhood(node.name, 1);
      if (this.stale(token)) return;
      this.model.clear();
      const delta = this.model.merge(payload);
      this.model.select(node.id);
      this.model.markExpanded(node.id);
      this.events.onGraphChanged?.(this.model, delta);
    } catch (err) {
      if (!this.stale(token)) this.fail(err);
    } finally {
      this.events.onBusy?.(false);
    }
  }

  /** Expand one rendered node by a further hop, merging the result. */
  async expand(nodeId: string): Promise<MergeDelta | null> {
    const node = this.model.node(nodeId);
    if (!node) return null;
    const token = this.nextToken();
    this.events.onBusy?.(true);
    try {
      const payload = await this.api.neighborhood(node.name, 1);
      if (this.stale(token)) return null;
      const delta = this.model.merge(payload);
      this.model.markExpanded(nodeId);
      this.events.onGraphChanged?.(this.model, delta);
      return delta;
    } catch (err) {
      if (!this.stale(token)) this.fail(err);
      return null;
    } finally {
      this.events.onBusy?.(false);
    }
  }

  async loadCooccurrence(
    level: CooccurrenceLevel,
    filters: { gene?: string; disease?: string } = {},
  ): Promise<CooccurrenceRow[]> {
    const token = this.nextToken();
    this.events.onBusy?.(true);
    try {
      const payload = await this.api.cooccurrence(level, filters);
      if (this.stale(token)) return [];
      this.events.onRows?.(payload.rows, level);
      return payload.rows;
    } catch (err) {
      if (!this.stale(token)) this.fail(err);
      return [];
    } finally {
      this.events.onBusy?.(false);
    }
  }
}
