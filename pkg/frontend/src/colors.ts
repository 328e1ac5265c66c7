import type { NodeLabel } from './types';

// Fixed node color legend: articles blue, genes green, diseases red.
export const NODE_COLORS: Record<NodeLabel, string> = {
  PubMedID: '#3b74c4',
  Gene: '#2e9e5b',
  Disease: '#d64545',
};

export function labelColor(label: NodeLabel): string {
  return NODE_COLORS[label];
}

export const LEGEND: Array<{ label: NodeLabel; color: string; caption: string }> = [
  { label: 'PubMedID', color: NODE_COLORS.PubMedID, caption: 'PubMed ID (article)' },
  { label: 'Gene', color: NODE_COLORS.Gene, caption: 'gene' },
  { label: 'Disease', color: NODE_COLORS.Disease, caption: 'disease' },
];
